// table_io.hpp — CSV emission (deterministic, 17 significant digits), CSV
// reading for replotting, and standalone SVG line plots.
#pragma once

#include "fanomech/sweep.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fanomech {

// Generic numeric table: a header plus rows of optional cells (empty cell =
// no data at that point, e.g. quantum outputs at unstable sweep points).
struct DataTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> cells; // ragged-free, columns.size() wide
    std::vector<bool> boolean_columns;                     // printed as true/false
};

DataTable to_table(const SweepResult& r);

// Format a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

// Write the table as CSV: header line, then one line per row; empty optionals
// become empty fields. Byte-deterministic for identical inputs.
void emit_csv(const DataTable& t, const std::string& path);
void emit_csv(const SweepResult& r, const std::string& path);

// Read back a CSV written by emit_csv. Empty fields map to disengaged
// optionals, true/false to 1/0.
DataTable read_csv(const std::string& path);

// Standalone SVG 1.1 line plot of one column against the first column.
// Rows with an empty cell become gaps in the polyline, never zeros. With
// log_y, non-positive values are also gaps; all-gap input is an error.
void emit_svg(const DataTable& t, const std::string& path, const std::string& column,
              bool log_y, const std::string& x_label = {});
void emit_svg(const SweepResult& r, const std::string& path, const std::string& column,
              bool log_y);

} // namespace fanomech
