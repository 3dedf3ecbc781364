#include "fanomech/meanfield.hpp"
#include "fanomech/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fanomech {

namespace {

constexpr double convergence_tol = 1e-12;
constexpr int max_iterations = 100000;
constexpr double damping = 0.5;
const ComplexAmplitude imag_unit{0.0, 1.0};

// Exact solution of the linear (alpha, sigma) subsystem at frozen x_m.
void solve_linear_subsystem(const SystemParams& p, double x_m, ComplexAmplitude& alpha,
                            ComplexAmplitude& sigma) {
    const double f = p.emitter.f_coupling;
    const ComplexAmplitude d_p(p.plasmon.gamma_p, p.plasmon.omega_p - p.drive.omega +
                                                      p.mech.g_single * x_m);
    const ComplexAmplitude d_q(p.emitter.gamma_qe, p.emitter.omega_qe - p.drive.omega);
    const ComplexAmplitude den = d_p - p.emitter.inversion_y * f * f / d_q;
    if (std::abs(den) < 1e-300) {
        throw PhysicsError("steady_state: degenerate linear subsystem, |denominator| < 1e-300");
    }
    alpha = -imag_unit * p.plasmon.eps_drive / den;
    sigma = imag_unit * f * p.emitter.inversion_y * alpha / d_q;
}

} // namespace

MeanFieldState steady_state(const SystemParams& p) {
    require_valid(p);

    MeanFieldState s;
    double x = 0.0;
    double prev1 = 0.0; // most recent iterates, for the divergence report
    double prev2 = 0.0;

    for (int it = 1; it <= max_iterations; ++it) {
        ComplexAmplitude alpha;
        ComplexAmplitude sigma;
        solve_linear_subsystem(p, x, alpha, sigma);
        const double target = -p.mech.g_single * std::norm(alpha) / p.mech.omega_m;
        const double x_new = x + damping * (target - x);
        if (!std::isfinite(x_new)) {
            throw PhysicsError("steady_state: mechanical displacement diverged to non-finite");
        }

        const bool done = std::abs(x_new - x) < convergence_tol;
        prev2 = prev1;
        prev1 = x;
        x = x_new;

        if (done) {
            solve_linear_subsystem(p, x, alpha, sigma);
            s.alpha = alpha;
            s.sigma = sigma;
            s.x_m = x;
            s.converged = true;
            s.iterations = it;

            // Residual of the three stated equations at the returned state.
            const ComplexAmplitude d_p(
                p.plasmon.gamma_p,
                p.plasmon.omega_p - p.drive.omega + p.mech.g_single * x);
            const ComplexAmplitude d_q(p.emitter.gamma_qe,
                                       p.emitter.omega_qe - p.drive.omega);
            const double f = p.emitter.f_coupling;
            const ComplexAmplitude r1 = -d_p * alpha -
                                        imag_unit * p.plasmon.eps_drive -
                                        imag_unit * f * sigma;
            const ComplexAmplitude r2 =
                -d_q * sigma + imag_unit * f * p.emitter.inversion_y * alpha;
            const double r3 = p.mech.omega_m * x + p.mech.g_single * std::norm(alpha);
            s.residual = std::sqrt(std::norm(r1) + std::norm(r2) + r3 * r3);
            return s;
        }
    }

    std::ostringstream oss;
    oss << "steady_state: no fixed point after " << max_iterations
        << " iterations (bistability or divergence); last three x_m iterates: " << prev2 << ", "
        << prev1 << ", " << x;
    throw PhysicsError(oss.str());
}

Displacement displacement_zpf(const MeanFieldState& s, const SystemParams& p) {
    if (!s.converged) {
        throw std::invalid_argument("displacement_zpf: state is not converged");
    }
    Displacement d;
    d.zpf_units = s.x_m / std::sqrt(2.0);
    d.femtometers = s.x_m * p.mech.x_zpf_fm;
    return d;
}

EffectiveCoupling effective_coupling(const MeanFieldState& s, const SystemParams& p) {
    if (!s.converged) {
        throw std::invalid_argument("effective_coupling: state is not converged");
    }
    return EffectiveCoupling{s.alpha * p.mech.g_single};
}

ComplexAmplitude mech_amplitude_full(const MeanFieldState& s, const SystemParams& p) {
    const ComplexAmplitude den(p.mech.gamma_m, p.mech.omega_m);
    return -imag_unit * p.mech.g_single * std::norm(s.alpha) / (std::sqrt(2.0) * den);
}

Eigen::Matrix<double, 6, 1> meanfield_vector_field(const SystemParams& p,
                                                   const Eigen::Matrix<double, 6, 1>& u) {
    const double xp = u[0];
    const double yp = u[1];
    const double xm = u[2];
    const double ym = u[3];
    const double xq = u[4];
    const double yq = u[5];

    const double det_p = p.plasmon.omega_p - p.drive.omega + p.mech.g_single * xm;
    const double det_q = p.emitter.omega_qe - p.drive.omega;
    const double f = p.emitter.f_coupling;
    const double y = p.emitter.inversion_y;
    const double root2 = std::sqrt(2.0);

    Eigen::Matrix<double, 6, 1> du;
    du[0] = -p.plasmon.gamma_p * xp + det_p * yp + f * yq;
    du[1] = -det_p * xp - p.plasmon.gamma_p * yp - f * xq - root2 * p.plasmon.eps_drive;
    du[2] = -p.mech.gamma_m * xm + p.mech.omega_m * ym;
    du[3] = -p.mech.omega_m * xm - p.mech.gamma_m * ym -
            p.mech.g_single * 0.5 * (xp * xp + yp * yp);
    du[4] = -f * y * yp - p.emitter.gamma_qe * xq + det_q * yq;
    du[5] = f * y * xp - det_q * xq - p.emitter.gamma_qe * yq;
    return du;
}

} // namespace fanomech
