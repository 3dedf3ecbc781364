// fluctuations.hpp — linearized quadrature dynamics around the mean field:
// drift and diffusion matrices, stability test, and the steady-state
// covariance from the continuous-time Lyapunov equation.
//
// Quadrature ordering: (dX_p, dY_p, dX_m, dY_m, dX_q, dY_q) for plasmon,
// mechanics, emitter. Vacuum variance 1/2 convention throughout. The emitter
// fluctuations are bosonized (weak excitation), so the state stays Gaussian.
#pragma once

#include "fanomech/meanfield.hpp"
#include "fanomech/params.hpp"

#include <Eigen/Dense>

#include <string>

namespace fanomech {

using Matrix6d = Eigen::Matrix<double, 6, 6>;

struct DriftMatrix {
    Matrix6d a = Matrix6d::Zero();
    // Rotation applied to plasmon and emitter quadratures so that the
    // effective coupling G enters the matrix real and positive. Rotating back
    // by this angle reconstructs lab-frame quadratures.
    double gauge_angle = 0.0;
};

struct DiffusionMatrix {
    Matrix6d d = Matrix6d::Zero();
};

struct CovarianceMatrix {
    Eigen::MatrixXd v;   // real symmetric, 2N x 2N
    std::string warning; // non-empty if the solve was ill-conditioned
    int modes() const { return static_cast<int>(v.rows()) / 2; }
};

struct StabilityResult {
    bool stable = false;
    double abscissa = 0.0; // max real part of the drift spectrum
};

// Jacobian of the mean-field vector field at the converged state, expressed in
// the gauge where G = alpha * g is real positive.
DriftMatrix drift_matrix(const SystemParams& p, const MeanFieldState& s);

// Same Jacobian in lab-frame quadratures (no gauge rotation); this is what a
// finite-difference derivative of meanfield_vector_field reproduces.
Matrix6d meanfield_jacobian(const SystemParams& p, const MeanFieldState& s);

// Input-noise diffusion: vacuum optical and emitter baths, thermal mechanical
// bath, D = diag(gamma_p, gamma_p, gamma_m(2 n_bar + 1), gamma_m(2 n_bar + 1),
// gamma_qe, gamma_qe).
DiffusionMatrix diffusion_matrix(const SystemParams& p);

// Stable iff every drift eigenvalue has real part < -1e-12.
StabilityResult is_stable(const Eigen::MatrixXd& a);
StabilityResult is_stable(const DriftMatrix& a);

// Unique symmetric V with a V + V a^T + d = 0, solved by vectorization of the
// Kronecker-sum linear system (extended precision internally) with
// symmetrization of the result. Throws PhysicsError for unstable drift;
// attaches a warning to the result when the system condition exceeds 1e14.
Eigen::MatrixXd solve_lyapunov_dense(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                     std::string* warning = nullptr);
CovarianceMatrix solve_lyapunov(const DriftMatrix& a, const DiffusionMatrix& d);

// RK4 integration of dV/dt = a V + V a^T + d from v0, re-symmetrizing each
// step; the independent oracle for solve_lyapunov. Requires dt * ||a||_F < 0.1.
Eigen::MatrixXd integrate_covariance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                     const Eigen::MatrixXd& v0, double t_final, double dt);
CovarianceMatrix integrate_covariance(const DriftMatrix& a, const DiffusionMatrix& d,
                                      const CovarianceMatrix& v0, double t_final, double dt);

// Symplectic form for n modes, block-diagonal [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int n_modes);

// Smallest eigenvalue of the Hermitian matrix V + i Omega / 2. Physical
// states satisfy >= 0 up to a -1e-10 tolerance.
double physicality_violation(const Eigen::MatrixXd& v);

} // namespace fanomech
