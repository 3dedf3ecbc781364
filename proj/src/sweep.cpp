#include "fanomech/sweep.hpp"

#include "fanomech/errors.hpp"
#include "fanomech/fluctuations.hpp"
#include "fanomech/meanfield.hpp"
#include "fanomech/quantumness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace fanomech {

std::string output_name(Output o) {
    switch (o) {
    case Output::Intensity:
        return "intensity";
    case Output::DisplacementZpf:
        return "displacement_zpf";
    case Output::DisplacementFm:
        return "displacement_fm";
    case Output::MinVariance:
        return "min_variance";
    case Output::Ep:
        return "ep";
    case Output::GEff:
        return "g_eff";
    case Output::Stable:
        return "stable";
    }
    throw std::invalid_argument("output_name: unknown output");
}

std::string control_name(Control c) {
    switch (c) {
    case Control::DriveWavelength:
        return "drive_wavelength";
    case Control::Voltage:
        return "voltage";
    case Control::EmitterResonance:
        return "emitter_resonance";
    }
    throw std::invalid_argument("control_name: unknown control");
}

std::string control_unit(Control c) {
    switch (c) {
    case Control::DriveWavelength:
        return "nm";
    case Control::Voltage:
        return "V";
    case Control::EmitterResonance:
        return "scaled";
    }
    throw std::invalid_argument("control_unit: unknown control");
}

std::vector<Output> parse_outputs(const std::string& csv_list) {
    std::vector<Output> outputs;
    std::stringstream ss(csv_list);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) {
            continue;
        }
        bool found = false;
        for (const Output o :
             {Output::Intensity, Output::DisplacementZpf, Output::DisplacementFm,
              Output::MinVariance, Output::Ep, Output::GEff, Output::Stable}) {
            if (token == output_name(o)) {
                outputs.push_back(o);
                found = true;
                break;
            }
        }
        if (!found) {
            throw ConfigError("unknown output column '" + token + "'");
        }
    }
    if (outputs.empty()) {
        throw ConfigError("output list must not be empty");
    }
    return outputs;
}

namespace {

struct PointEval {
    double control = 0.0;
    bool meanfield_ok = false;
    bool stable = false;
    double intensity = 0.0;
    double displacement_zpf = 0.0;
    double displacement_fm = 0.0;
    double g_eff_abs = 0.0;
    std::optional<double> min_variance;
    std::optional<double> ep;
};

SystemParams params_at(const Config& cfg, Control kind, double control) {
    SystemParams p = cfg.params;
    switch (kind) {
    case Control::DriveWavelength:
        p.drive.omega = scaled_from_nm(control, p.reference_ev);
        break;
    case Control::Voltage:
        p.emitter.omega_qe =
            scaled_from_ev(voltage_to_resonance(control, cfg.voltage), p.reference_ev);
        break;
    case Control::EmitterResonance:
        p.emitter.omega_qe = control;
        break;
    }
    return p;
}

PointEval evaluate_one(const Config& cfg, Control kind, double control) {
    PointEval r;
    r.control = control;
    const SystemParams p = params_at(cfg, kind, control);
    require_valid(p);

    MeanFieldState s;
    try {
        s = steady_state(p);
    } catch (const PhysicsError&) {
        // Divergent mean field: report the point as unstable with no data.
        return r;
    }
    r.meanfield_ok = true;
    r.intensity = std::norm(s.alpha);
    const Displacement disp = displacement_zpf(s, p);
    r.displacement_zpf = disp.zpf_units;
    r.displacement_fm = disp.femtometers;
    r.g_eff_abs = std::abs(effective_coupling(s, p).g_eff);

    const DriftMatrix a = drift_matrix(p, s);
    const DiffusionMatrix d = diffusion_matrix(p);
    const StabilityResult stab = is_stable(a);
    r.stable = stab.stable;
    if (stab.stable) {
        const CovarianceMatrix v = solve_lyapunov(a, d);
        const SingleModeCM mech = reduced_mode(v, Mode::Mechanics);
        r.min_variance = min_quadrature_variance(mech).variance;
        r.ep = entanglement_potential(mech);
    }
    return r;
}

// Evaluate all points with a bounded worker pool; results land in input order,
// so serial and concurrent runs produce identical tables.
std::vector<PointEval> evaluate_points(const Config& cfg, Control kind,
                                       const std::vector<double>& controls, int jobs) {
    std::vector<PointEval> results(controls.size());
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(controls.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < controls.size(); ++i) {
            results[i] = evaluate_one(cfg, kind, controls[i]);
        }
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= controls.size()) {
                return;
            }
            try {
                results[i] = evaluate_one(cfg, kind, controls[i]);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return results;
}

void validate_spec(const SweepSpec& spec) {
    if (!(std::isfinite(spec.start) && std::isfinite(spec.stop) && spec.start < spec.stop)) {
        throw ConfigError("sweep spec: need finite start < stop");
    }
    if (spec.points < 2) {
        throw ConfigError("sweep spec: need at least 2 points");
    }
    if (spec.outputs.empty()) {
        throw ConfigError("sweep spec: output list must not be empty");
    }
}

std::vector<double> linspace(double start, double stop, int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] =
            start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    grid.front() = start;
    grid.back() = stop;
    return grid;
}

SweepResult assemble(const Config& cfg, const SweepSpec& spec,
                     const std::vector<PointEval>& evals) {
    SweepResult out;
    out.outputs = spec.outputs;
    out.control = spec.control;
    out.params = cfg.params;
    out.voltage = cfg.voltage;
    out.columns.push_back("control");
    for (const Output o : spec.outputs) {
        out.columns.push_back(output_name(o));
    }

    out.rows.reserve(evals.size());
    for (const PointEval& e : evals) {
        SweepRow row;
        row.control = e.control;
        row.stable = e.stable;
        row.values.reserve(spec.outputs.size());
        for (const Output o : spec.outputs) {
            std::optional<double> cell;
            if (e.meanfield_ok) {
                switch (o) {
                case Output::Intensity:
                    cell = e.intensity;
                    break;
                case Output::DisplacementZpf:
                    cell = e.displacement_zpf;
                    break;
                case Output::DisplacementFm:
                    cell = e.displacement_fm;
                    break;
                case Output::MinVariance:
                    cell = e.min_variance;
                    break;
                case Output::Ep:
                    cell = e.ep;
                    break;
                case Output::GEff:
                    cell = e.g_eff_abs;
                    break;
                case Output::Stable:
                    cell = e.stable ? 1.0 : 0.0;
                    break;
                }
            } else if (o == Output::Stable) {
                cell = 0.0;
            }
            row.values.push_back(cell);
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace

SweepResult run_spectrum(const Config& cfg, const SweepSpec& spec, int jobs) {
    if (spec.control != Control::DriveWavelength) {
        throw ConfigError("run_spectrum: control must be drive_wavelength");
    }
    validate_spec(spec);
    require_valid(cfg.params);

    std::vector<double> grid = linspace(spec.start, spec.stop, spec.points);
    if (spec.refine) {
        // Extra resolution across the transparency: +-50 gamma_QE around the
        // emitter resonance, mapped back to wavelength and clipped to range.
        const SystemParams& p = cfg.params;
        const double omega_lo = p.emitter.omega_qe - 50.0 * p.emitter.gamma_qe;
        const double omega_hi = p.emitter.omega_qe + 50.0 * p.emitter.gamma_qe;
        if (omega_lo > 0.0) {
            const double lam_lo = nm_from_scaled(omega_hi, p.reference_ev);
            const double lam_hi = nm_from_scaled(omega_lo, p.reference_ev);
            const auto fine = linspace(std::max(lam_lo, spec.start),
                                       std::min(lam_hi, spec.stop), 200);
            for (const double lam : fine) {
                if (lam > spec.start && lam < spec.stop) {
                    grid.push_back(lam);
                }
            }
        }
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    }

    const auto evals = evaluate_points(cfg, Control::DriveWavelength, grid, jobs);
    return assemble(cfg, spec, evals);
}

SweepResult run_voltage_sweep(const Config& cfg, const SweepSpec& spec, int jobs) {
    if (spec.control != Control::Voltage) {
        throw ConfigError("run_voltage_sweep: control must be voltage");
    }
    validate_spec(spec);
    require_valid(cfg.params);

    const std::vector<double> grid = linspace(spec.start, spec.stop, spec.points);
    const auto evals = evaluate_points(cfg, Control::Voltage, grid, jobs);

    const bool any_stable =
        std::any_of(evals.begin(), evals.end(), [](const PointEval& e) { return e.stable; });
    if (!any_stable) {
        throw PhysicsError("run_voltage_sweep: every sweep point is dynamically unstable; "
                           "reduce mech.g_single or plasmon.eps_drive");
    }
    return assemble(cfg, spec, evals);
}

PointReport evaluate_point(const Config& cfg, std::optional<double> voltage) {
    SystemParams p = cfg.params;
    if (voltage.has_value()) {
        p.emitter.omega_qe =
            scaled_from_ev(voltage_to_resonance(*voltage, cfg.voltage), p.reference_ev);
    }
    require_valid(p);

    PointReport r;
    r.params = p;
    const MeanFieldState s = steady_state(p);
    r.alpha = s.alpha;
    r.sigma = s.sigma;
    r.intensity = std::norm(s.alpha);
    r.x_m = s.x_m;
    const Displacement disp = displacement_zpf(s, p);
    r.displacement_zpf = disp.zpf_units;
    r.displacement_fm = disp.femtometers;
    r.g_eff_abs = std::abs(effective_coupling(s, p).g_eff);

    const DriftMatrix a = drift_matrix(p, s);
    const DiffusionMatrix d = diffusion_matrix(p);
    const StabilityResult stab = is_stable(a);
    r.stable = stab.stable;
    r.abscissa = stab.abscissa;
    if (stab.stable) {
        const CovarianceMatrix v = solve_lyapunov(a, d);
        r.lyapunov_warning = v.warning;
        const SingleModeCM mech = reduced_mode(v, Mode::Mechanics);
        const QuadratureVariance q = min_quadrature_variance(mech);
        r.min_variance = q.variance;
        r.min_variance_angle = q.angle;
        r.ep = entanglement_potential(mech);
    }
    return r;
}

} // namespace fanomech
