// params.hpp — physical parameters of the plasmon / emitter / cantilever system,
// unit scaling helpers, validation, and the voltage -> emitter-resonance map.
//
// All dynamical quantities are kept in scaled units: rates and frequencies are
// divided by an optical reference frequency nu_ref = reference_ev / h. Physical
// input (eV, Hz, volts, nm) is converted at the boundary.
#pragma once

#include <string>
#include <vector>

namespace fanomech {

// Planck constant, eV * s (exact in the 2019 SI).
inline constexpr double planck_ev_s = 4.135667696923859e-15;
// h * c, eV * nm. Converts vacuum wavelength to photon energy.
inline constexpr double hc_ev_nm = 1239.8419843320026;

struct PlasmonMode {
    double omega_p = 1.0;   // gap plasmon resonance
    double gamma_p = 0.1;   // damping rate
    double eps_drive = 0.7; // incident drive amplitude
};

struct QuantumEmitter {
    double omega_qe = 1.0;     // level spacing
    double gamma_qe = 1e-5;    // decay rate
    double f_coupling = 0.1;   // plasmon-emitter coupling
    double inversion_y = -1.0; // population inversion; -1 = ground state
};

struct MechanicalMode {
    double omega_m = 0.0;   // mechanical frequency (set by default_params)
    double gamma_m = 0.0;   // mechanical damping rate
    double n_bar = 0.0;     // thermal bath occupation
    double g_single = 0.01; // single-plasmon optomechanical coupling
    double x_zpf_fm = 30.0; // zero-point fluctuation length, femtometers (reporting only)
};

struct Drive {
    double omega = 1.0; // drive frequency
};

// Linear Stark map: emitter resonance in eV as a function of applied volts.
struct VoltageMap {
    double kappa_mev_per_v = 20.0; // resonance shift per volt, meV/V
    double omega_qe_0_ev = 2.035;  // zero-voltage emitter resonance, eV
};

struct SystemParams {
    PlasmonMode plasmon;
    QuantumEmitter emitter;
    MechanicalMode mech;
    Drive drive;
    // Optical reference energy defining the scaled unit system. Records which
    // unit system every rate above is expressed in (1 scaled unit = this energy).
    double reference_ev = 2.035;
};

// Unit scaling. Round-trips reproduce inputs to machine precision.
double scaled_from_ev(double energy_ev, double reference_ev);
double ev_from_scaled(double omega_scaled, double reference_ev);
double scaled_from_hz(double rate_hz, double reference_ev);
double hz_from_scaled(double omega_scaled, double reference_ev);
double scaled_from_nm(double wavelength_nm, double reference_ev);
double nm_from_scaled(double omega_scaled, double reference_ev);

// Factory defaults: the scaled regime omega_p = omega = Omega_QE = 1,
// gamma_p = 0.1, gamma_QE = 1e-5, f = 0.1, y = -1; mechanics at 10 MHz
// relative to the optical reference, quality factor 10, ground-state bath.
SystemParams default_params();

// Emitter resonance in eV under an applied voltage: omega_qe_0 + kappa * v.
// Throws std::invalid_argument for non-finite voltage.
double voltage_to_resonance(double volts, const VoltageMap& map);

struct ValidationReport {
    std::vector<std::string> issues; // one entry per violated invariant, by field path
    bool ok() const { return issues.empty(); }
    std::string to_string() const;
};

// Pure check of every invariant; never throws.
ValidationReport validate(const SystemParams& p);
// Returns p unchanged if valid, otherwise throws ConfigError listing all violations.
const SystemParams& require_valid(const SystemParams& p);

} // namespace fanomech
