#include "fanomech/params.hpp"
#include "fanomech/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fanomech {

double scaled_from_ev(double energy_ev, double reference_ev) {
    return energy_ev / reference_ev;
}

double ev_from_scaled(double omega_scaled, double reference_ev) {
    return omega_scaled * reference_ev;
}

double scaled_from_hz(double rate_hz, double reference_ev) {
    return rate_hz * planck_ev_s / reference_ev;
}

double hz_from_scaled(double omega_scaled, double reference_ev) {
    return omega_scaled * reference_ev / planck_ev_s;
}

double scaled_from_nm(double wavelength_nm, double reference_ev) {
    return hc_ev_nm / wavelength_nm / reference_ev;
}

double nm_from_scaled(double omega_scaled, double reference_ev) {
    return hc_ev_nm / (omega_scaled * reference_ev);
}

SystemParams default_params() {
    SystemParams p;
    // 10 MHz cantilever expressed relative to the optical reference line.
    p.mech.omega_m = scaled_from_hz(10e6, p.reference_ev);
    // Quality factor 10, typical of air-operated plasmomechanical cantilevers.
    p.mech.gamma_m = p.mech.omega_m / 10.0;
    return p;
}

double voltage_to_resonance(double volts, const VoltageMap& map) {
    if (!std::isfinite(volts)) {
        throw std::invalid_argument("voltage_to_resonance: voltage must be finite");
    }
    return map.omega_qe_0_ev + map.kappa_mev_per_v * 1e-3 * volts;
}

std::string ValidationReport::to_string() const {
    std::ostringstream oss;
    oss << "invalid parameters (" << issues.size() << " issue(s)):";
    for (const auto& issue : issues) {
        oss << "\n  - " << issue;
    }
    return oss.str();
}

namespace {

void check(std::vector<std::string>& issues, bool ok, const std::string& message) {
    if (!ok) {
        issues.push_back(message);
    }
}

std::string with_value(const std::string& field, double v) {
    std::ostringstream oss;
    oss << field << " (got " << v << ")";
    return oss.str();
}

} // namespace

ValidationReport validate(const SystemParams& p) {
    ValidationReport r;
    auto& is = r.issues;

    check(is, std::isfinite(p.plasmon.omega_p) && p.plasmon.omega_p > 0.0,
          with_value("plasmon.omega_p must be > 0", p.plasmon.omega_p));
    check(is, std::isfinite(p.plasmon.gamma_p) && p.plasmon.gamma_p > 0.0,
          with_value("plasmon.gamma_p must be > 0", p.plasmon.gamma_p));
    check(is, std::isfinite(p.plasmon.eps_drive) && p.plasmon.eps_drive >= 0.0,
          with_value("plasmon.eps_drive must be >= 0", p.plasmon.eps_drive));

    check(is, std::isfinite(p.emitter.omega_qe),
          with_value("emitter.omega_qe must be finite", p.emitter.omega_qe));
    check(is, std::isfinite(p.emitter.gamma_qe) && p.emitter.gamma_qe > 0.0,
          with_value("emitter.gamma_qe must be > 0", p.emitter.gamma_qe));
    check(is, std::isfinite(p.emitter.f_coupling) && p.emitter.f_coupling >= 0.0,
          with_value("emitter.f_coupling must be >= 0", p.emitter.f_coupling));
    check(is,
          std::isfinite(p.emitter.inversion_y) && p.emitter.inversion_y >= -1.0 &&
              p.emitter.inversion_y <= 1.0,
          with_value("emitter.inversion_y must lie in [-1, 1]", p.emitter.inversion_y));

    check(is, std::isfinite(p.mech.omega_m) && p.mech.omega_m > 0.0,
          with_value("mech.omega_m must be > 0", p.mech.omega_m));
    check(is, std::isfinite(p.mech.gamma_m) && p.mech.gamma_m > 0.0,
          with_value("mech.gamma_m must be > 0", p.mech.gamma_m));
    check(is, std::isfinite(p.mech.n_bar) && p.mech.n_bar >= 0.0,
          with_value("mech.n_bar must be >= 0", p.mech.n_bar));
    check(is, std::isfinite(p.mech.g_single),
          with_value("mech.g_single must be finite", p.mech.g_single));
    check(is, std::isfinite(p.mech.x_zpf_fm) && p.mech.x_zpf_fm > 0.0,
          with_value("mech.x_zpf_fm must be > 0", p.mech.x_zpf_fm));

    check(is, std::isfinite(p.drive.omega) && p.drive.omega > 0.0,
          with_value("drive.omega must be > 0", p.drive.omega));

    check(is, std::isfinite(p.reference_ev) && p.reference_ev > 0.0,
          with_value("reference_ev must be > 0", p.reference_ev));

    return r;
}

const SystemParams& require_valid(const SystemParams& p) {
    const ValidationReport r = validate(p);
    if (!r.ok()) {
        throw ConfigError(r.to_string());
    }
    return p;
}

} // namespace fanomech
