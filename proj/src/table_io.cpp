#include "fanomech/table_io.hpp"
#include "fanomech/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace fanomech {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

DataTable to_table(const SweepResult& r) {
    DataTable t;
    t.columns = r.columns;
    t.boolean_columns.assign(r.columns.size(), false);
    for (std::size_t i = 0; i < r.outputs.size(); ++i) {
        if (r.outputs[i] == Output::Stable) {
            t.boolean_columns[i + 1] = true;
        }
    }
    t.cells.reserve(r.rows.size());
    for (const SweepRow& row : r.rows) {
        std::vector<std::optional<double>> cells;
        cells.reserve(r.columns.size());
        cells.emplace_back(row.control);
        for (const auto& v : row.values) {
            cells.push_back(v);
        }
        t.cells.push_back(std::move(cells));
    }
    return t;
}

void emit_csv(const DataTable& t, const std::string& path) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) {
        throw IoError("emit_csv: cannot open for writing: " + path);
    }

    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c > 0) {
            out << ',';
        }
        out << t.columns[c];
    }
    out << '\n';

    for (const auto& row : t.cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) {
                out << ',';
            }
            if (!row[c].has_value()) {
                continue;
            }
            if (c < t.boolean_columns.size() && t.boolean_columns[c]) {
                out << (*row[c] != 0.0 ? "true" : "false");
            } else {
                out << format_double(*row[c]);
            }
        }
        out << '\n';
    }
    out.flush();
    if (!out) {
        throw IoError("emit_csv: write failed: " + path);
    }
}

void emit_csv(const SweepResult& r, const std::string& path) {
    emit_csv(to_table(r), path);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

} // namespace

DataTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("read_csv: cannot open: " + path);
    }
    DataTable t;
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("read_csv: empty file: " + path);
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    t.columns = split_line(line);
    t.boolean_columns.assign(t.columns.size(), false);

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_line(line);
        if (fields.size() != t.columns.size()) {
            std::ostringstream oss;
            oss << "read_csv: " << path << ":" << line_no << ": expected " << t.columns.size()
                << " fields, got " << fields.size();
            throw ConfigError(oss.str());
        }
        std::vector<std::optional<double>> row;
        row.reserve(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const std::string& f = fields[c];
            if (f.empty()) {
                row.emplace_back(std::nullopt);
            } else if (f == "true") {
                row.emplace_back(1.0);
                t.boolean_columns[c] = true;
            } else if (f == "false") {
                row.emplace_back(0.0);
                t.boolean_columns[c] = true;
            } else {
                char* end = nullptr;
                const double v = std::strtod(f.c_str(), &end);
                if (end == nullptr || *end != '\0') {
                    std::ostringstream oss;
                    oss << "read_csv: " << path << ":" << line_no << ": bad number '" << f << "'";
                    throw ConfigError(oss.str());
                }
                row.emplace_back(v);
            }
        }
        t.cells.push_back(std::move(row));
    }
    return t;
}

namespace {

constexpr double svg_width = 800.0;
constexpr double svg_height = 500.0;
constexpr double margin_left = 80.0;
constexpr double margin_right = 25.0;
constexpr double margin_top = 25.0;
constexpr double margin_bottom = 60.0;

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return std::string(buf);
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

} // namespace

void emit_svg(const DataTable& t, const std::string& path, const std::string& column,
              bool log_y, const std::string& x_label) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), column);
    if (it == t.columns.end()) {
        throw ConfigError("emit_svg: column '" + column + "' not present in the result");
    }
    const std::size_t col = static_cast<std::size_t>(it - t.columns.begin());
    if (col == 0) {
        throw ConfigError("emit_svg: cannot plot the control column against itself");
    }
    if (t.columns.empty() || t.cells.empty()) {
        throw ConfigError("emit_svg: nothing to plot");
    }

    // Collect x and usable y values; empty / non-plottable cells become gaps.
    struct Pt {
        double x;
        std::optional<double> y;
    };
    std::vector<Pt> pts;
    pts.reserve(t.cells.size());
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -y_min;
    std::size_t usable = 0;
    for (const auto& row : t.cells) {
        if (!row[0].has_value()) {
            continue;
        }
        Pt p{*row[0], std::nullopt};
        if (row[col].has_value()) {
            const double y = *row[col];
            if (std::isfinite(y) && (!log_y || y > 0.0)) {
                p.y = log_y ? std::log10(y) : y;
            }
        }
        x_min = std::min(x_min, p.x);
        x_max = std::max(x_max, p.x);
        if (p.y.has_value()) {
            y_min = std::min(y_min, *p.y);
            y_max = std::max(y_max, *p.y);
            ++usable;
        }
        pts.push_back(p);
    }
    if (usable == 0) {
        throw ConfigError("emit_svg: no plottable values in column '" + column +
                          (log_y ? "' (log scale requires positive values)" : "'"));
    }
    if (x_max <= x_min) {
        x_max = x_min + 1.0;
    }
    if (y_max <= y_min) {
        y_max = y_min + 1.0;
        y_min -= 1.0;
    }

    const double plot_w = svg_width - margin_left - margin_right;
    const double plot_h = svg_height - margin_top - margin_bottom;
    const auto to_px_x = [&](double x) {
        return margin_left + plot_w * (x - x_min) / (x_max - x_min);
    };
    const auto to_px_y = [&](double y) {
        return margin_top + plot_h * (1.0 - (y - y_min) / (y_max - y_min));
    };

    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) {
        throw IoError("emit_svg: cannot open for writing: " + path);
    }

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << svg_width
        << "\" height=\"" << svg_height << "\" viewBox=\"0 0 " << svg_width << " " << svg_height
        << "\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << svg_width << "\" height=\"" << svg_height
        << "\" fill=\"white\"/>\n";
    out << "  <rect x=\"" << coord(margin_left) << "\" y=\"" << coord(margin_top) << "\" width=\""
        << coord(plot_w) << "\" height=\"" << coord(plot_h)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    // Axis ticks: 5 linear divisions (decade labels when log).
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 5.0;
        const double px = to_px_x(fx);
        out << "  <line x1=\"" << coord(px) << "\" y1=\"" << coord(margin_top + plot_h)
            << "\" x2=\"" << coord(px) << "\" y2=\"" << coord(margin_top + plot_h + 5)
            << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << coord(px) << "\" y=\"" << coord(margin_top + plot_h + 20)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(fx) << "</text>\n";

        const double fy = y_min + (y_max - y_min) * i / 5.0;
        const double py = to_px_y(fy);
        out << "  <line x1=\"" << coord(margin_left - 5) << "\" y1=\"" << coord(py) << "\" x2=\""
            << coord(margin_left) << "\" y2=\"" << coord(py) << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << coord(margin_left - 8) << "\" y=\"" << coord(py + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">"
            << tick_label(log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
    }

    const std::string xlab = x_label.empty() ? t.columns[0] : x_label;
    out << "  <text x=\"" << coord(margin_left + plot_w / 2) << "\" y=\""
        << coord(svg_height - 15) << "\" font-size=\"13\" text-anchor=\"middle\">"
        << xml_escape(xlab) << "</text>\n";
    out << "  <text x=\"18\" y=\"" << coord(margin_top + plot_h / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << coord(margin_top + plot_h / 2) << ")\">" << xml_escape(column)
        << (log_y ? " (log10)" : "") << "</text>\n";

    // Polyline segments; a one-point segment renders as a small circle.
    std::vector<std::pair<double, double>> segment;
    const auto flush_segment = [&]() {
        if (segment.size() == 1) {
            out << "  <circle cx=\"" << coord(segment[0].first) << "\" cy=\""
                << coord(segment[0].second) << "\" r=\"2\" fill=\"#1f6fb2\"/>\n";
        } else if (segment.size() > 1) {
            out << "  <polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < segment.size(); ++i) {
                if (i > 0) {
                    out << ' ';
                }
                out << coord(segment[i].first) << ',' << coord(segment[i].second);
            }
            out << "\"/>\n";
        }
        segment.clear();
    };
    for (const Pt& p : pts) {
        if (!p.y.has_value()) {
            flush_segment();
            continue;
        }
        segment.emplace_back(to_px_x(p.x), to_px_y(*p.y));
    }
    flush_segment();

    out << "</svg>\n";
    out.flush();
    if (!out) {
        throw IoError("emit_svg: write failed: " + path);
    }
}

void emit_svg(const SweepResult& r, const std::string& path, const std::string& column,
              bool log_y) {
    const DataTable t = to_table(r);
    const std::string x_label = control_name(r.control) + " [" + control_unit(r.control) + "]";
    emit_svg(t, path, column, log_y, x_label);
}

} // namespace fanomech
