// meanfield.hpp — classical steady state of the driven
// plasmon / emitter / cantilever system and derived observables.
//
// Rotating frame at the drive frequency for plasmon and emitter. The fixed
// point solves
//   0 = -[i(Omega_p - omega + g x_m) + gamma_p] alpha - i eps_p - i f sigma
//   0 = -[i(Omega_QE - omega) + gamma_QE] sigma + i f y alpha
//   0 = omega_m x_m + g |alpha|^2          (mechanical balance, gamma_m << omega_m)
// by damped fixed-point iteration on x_m with the linear (alpha, sigma)
// subsystem solved exactly each step.
#pragma once

#include "fanomech/fano.hpp"
#include "fanomech/params.hpp"

#include <Eigen/Dense>

namespace fanomech {

struct MeanFieldState {
    ComplexAmplitude alpha{0.0, 0.0}; // plasmon amplitude
    ComplexAmplitude sigma{0.0, 0.0}; // emitter coherence
    double x_m = 0.0;                 // mechanical displacement, x-quadrature units
    bool converged = false;
    int iterations = 0;
    double residual = 0.0; // norm of the three fixed-point equations at the state
};

struct EffectiveCoupling {
    ComplexAmplitude g_eff{0.0, 0.0}; // G = alpha * g
};

struct Displacement {
    double zpf_units = 0.0;   // x_m / sqrt(2)
    double femtometers = 0.0; // x_m * x_zpf
};

// Solve the steady state. Damping 0.5 on the x_m update; converged when
// successive x_m differ by < 1e-12. Throws PhysicsError (reporting the last
// three iterates) if 1e5 iterations do not converge, which signals
// bistability or runaway rather than a solvable fixed point.
MeanFieldState steady_state(const SystemParams& p);

// Displacement of a converged state in zero-point units and femtometers.
// Radiation pressure pushes toward smaller gap: negative sign convention.
Displacement displacement_zpf(const MeanFieldState& s, const SystemParams& p);

// Effective optomechanical coupling G = alpha * g.
EffectiveCoupling effective_coupling(const MeanFieldState& s, const SystemParams& p);

// Full complex mechanical amplitude a_m = -i g |alpha|^2 / (sqrt(2)(i omega_m + gamma_m)).
// The static x_m above equals sqrt(2) Re(a_m) up to O((gamma_m/omega_m)^2).
ComplexAmplitude mech_amplitude_full(const MeanFieldState& s, const SystemParams& p);

// Nonlinear mean-field vector field over lab-frame quadratures
// u = (X_p, Y_p, X_m, Y_m, X_q, Y_q). steady_state solves F(u) = 0 in the
// gamma_m -> 0 mechanical limit; fluctuations linearize F around it.
Eigen::Matrix<double, 6, 1> meanfield_vector_field(const SystemParams& p,
                                                   const Eigen::Matrix<double, 6, 1>& u);

} // namespace fanomech
