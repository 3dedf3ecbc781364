#include "fanomech/fano.hpp"
#include "fanomech/errors.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>

namespace fanomech {

namespace {

ComplexAmplitude fano_denominator(double omega, const SystemParams& p) {
    const ComplexAmplitude plasmon_term(p.plasmon.gamma_p, p.plasmon.omega_p - omega);
    const ComplexAmplitude emitter_term(p.emitter.gamma_qe, p.emitter.omega_qe - omega);
    const double f2 = p.emitter.f_coupling * p.emitter.f_coupling;
    const ComplexAmplitude den = plasmon_term - p.emitter.inversion_y * f2 / emitter_term;
    if (std::abs(den) < 1e-300) {
        std::ostringstream oss;
        oss << "plasmon_amplitude: degenerate parameters, |denominator| < 1e-300 at omega = "
            << omega;
        throw PhysicsError(oss.str());
    }
    return den;
}

ComplexAmplitude amplitude_unchecked(double omega, const SystemParams& p) {
    return p.plasmon.eps_drive / fano_denominator(omega, p);
}

double intensity_at(double omega, const SystemParams& p) {
    return std::norm(amplitude_unchecked(omega, p));
}

} // namespace

ComplexAmplitude plasmon_amplitude(double omega, const SystemParams& p) {
    require_valid(p);
    if (!std::isfinite(omega)) {
        throw std::invalid_argument("plasmon_amplitude: omega must be finite");
    }
    return amplitude_unchecked(omega, p);
}

Spectrum spectrum(std::span<const double> omega_grid, const SystemParams& p) {
    require_valid(p);
    if (omega_grid.size() < 2) {
        throw std::invalid_argument("spectrum: grid must contain at least 2 points");
    }
    for (std::size_t i = 0; i + 1 < omega_grid.size(); ++i) {
        if (!(omega_grid[i] < omega_grid[i + 1])) {
            throw std::invalid_argument("spectrum: grid must be strictly increasing");
        }
    }

    Spectrum s;
    s.omegas.assign(omega_grid.begin(), omega_grid.end());
    s.amplitudes.reserve(omega_grid.size());
    s.intensities.reserve(omega_grid.size());
    for (const double omega : omega_grid) {
        const ComplexAmplitude a = amplitude_unchecked(omega, p);
        s.amplitudes.push_back(a);
        s.intensities.push_back(std::norm(a));
    }
    return s;
}

double find_transparency(const SystemParams& p, double bracket_lo, double bracket_hi) {
    require_valid(p);
    if (!(std::isfinite(bracket_lo) && std::isfinite(bracket_hi) && bracket_lo < bracket_hi)) {
        throw std::invalid_argument("find_transparency: bracket must be finite with lo < hi");
    }
    if (p.emitter.f_coupling <= 0.0) {
        throw PhysicsError("find_transparency: f_coupling = 0, no interference path and "
                           "no transparency exists");
    }

    // Dense pre-scan to seed the refinement.
    constexpr int scan_points = 10000;
    const double step = (bracket_hi - bracket_lo) / (scan_points - 1);
    int best = 0;
    double best_val = intensity_at(bracket_lo, p);
    for (int i = 1; i < scan_points; ++i) {
        const double omega = bracket_lo + step * i;
        const double val = intensity_at(omega, p);
        if (val < best_val) {
            best_val = val;
            best = i;
        }
    }
    if (best == 0 || best == scan_points - 1) {
        throw PhysicsError("find_transparency: intensity minimum lies on the bracket edge; "
                           "enlarge the bracket");
    }

    // Golden-section refinement on the three-point bracket around the scan minimum.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = bracket_lo + step * (best - 1);
    double hi = bracket_lo + step * (best + 1);
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = intensity_at(x1, p);
    double f2 = intensity_at(x2, p);
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = intensity_at(x1, p);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = intensity_at(x2, p);
        }
    }
    return 0.5 * (lo + hi);
}

double enhancement_ratio(double omega, const SystemParams& p) {
    require_valid(p);
    if (!std::isfinite(omega)) {
        throw std::invalid_argument("enhancement_ratio: omega must be finite");
    }
    SystemParams bare = p;
    bare.emitter.f_coupling = 0.0;
    // |alpha|^2 / |alpha_bare|^2 = |den_bare|^2 / |den|^2; independent of the drive.
    return std::norm(fano_denominator(omega, bare)) / std::norm(fano_denominator(omega, p));
}

} // namespace fanomech
