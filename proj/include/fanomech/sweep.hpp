// sweep.hpp — parameter sweeps across the full pipeline: mean field,
// stability, covariance, displacement, and entanglement potential per point.
#pragma once

#include "fanomech/config.hpp"
#include "fanomech/fano.hpp"
#include "fanomech/params.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fanomech {

inline constexpr const char* tool_version = "fanomech 1.0.0";

enum class Control {
    DriveWavelength, // nm
    Voltage,         // volts, through the voltage map
    EmitterResonance // scaled units, set directly
};

enum class Output {
    Intensity,
    DisplacementZpf,
    DisplacementFm,
    MinVariance,
    Ep,
    GEff,
    Stable,
};

std::string output_name(Output o);
std::string control_name(Control c);
std::string control_unit(Control c);
// Parse a comma-separated output list ("intensity,ep,stable"). ConfigError on
// unknown names or an empty list.
std::vector<Output> parse_outputs(const std::string& csv_list);

struct SweepSpec {
    Control control = Control::Voltage;
    double start = 0.0;
    double stop = 0.35;
    int points = 500;
    std::vector<Output> outputs;
    // Spectrum sweeps only: add 200 extra points within +-50 gamma_QE of the
    // emitter resonance so the transparency dip is resolved.
    bool refine = true;
};

struct SweepRow {
    double control = 0.0;
    // Aligned with SweepSpec::outputs; disengaged optionals become empty CSV
    // cells. Unstable points carry empty quantum outputs, never zeros.
    std::vector<std::optional<double>> values;
    bool stable = false;
};

struct SweepResult {
    std::vector<std::string> columns; // "control" followed by the output names
    std::vector<SweepRow> rows;       // sorted by control value, ascending
    std::vector<Output> outputs;
    Control control = Control::Voltage;
    SystemParams params;   // resolved parameter snapshot
    VoltageMap voltage;
    std::string version = tool_version;
};

// Full per-point observables for the `point` command.
struct PointReport {
    SystemParams params;
    ComplexAmplitude alpha;
    ComplexAmplitude sigma;
    double intensity = 0.0;
    double x_m = 0.0;
    double displacement_zpf = 0.0;
    double displacement_fm = 0.0;
    double g_eff_abs = 0.0;
    bool stable = false;
    double abscissa = 0.0;
    std::optional<double> min_variance;
    std::optional<double> min_variance_angle;
    std::optional<double> ep;
    std::string lyapunov_warning;
};

// Drive-wavelength sweep of the plasmon response (control = nm). Rows are
// sorted by wavelength; auto-refinement may add up to 200 rows.
SweepResult run_spectrum(const Config& cfg, const SweepSpec& spec, int jobs = 1);

// Voltage sweep: Omega_QE per point through the voltage map, full pipeline at
// fixed drive frequency. Unstable points are flagged, not fatal; if every
// point is unstable a PhysicsError advises reducing g or eps_drive.
SweepResult run_voltage_sweep(const Config& cfg, const SweepSpec& spec, int jobs = 1);

// Single evaluation at the configured parameters (optionally at a voltage).
PointReport evaluate_point(const Config& cfg, std::optional<double> voltage = std::nullopt);

} // namespace fanomech
