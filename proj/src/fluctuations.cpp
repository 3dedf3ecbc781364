#include "fanomech/fluctuations.hpp"
#include "fanomech/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace fanomech {

namespace {

constexpr double stability_margin = 1e-12;
constexpr double condition_warning_threshold = 1e14;

using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXld = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

void require_square_same(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d) {
    if (a.rows() != a.cols() || d.rows() != d.cols() || a.rows() != d.rows() || a.rows() == 0) {
        throw std::invalid_argument("drift and diffusion must be square matrices of equal size");
    }
}

} // namespace

Matrix6d meanfield_jacobian(const SystemParams& p, const MeanFieldState& s) {
    if (!s.converged) {
        throw std::invalid_argument("meanfield_jacobian: state is not converged");
    }
    require_valid(p);

    const double det_p = p.plasmon.omega_p - p.drive.omega + p.mech.g_single * s.x_m;
    const double det_q = p.emitter.omega_qe - p.drive.omega;
    const double f = p.emitter.f_coupling;
    const double y = p.emitter.inversion_y;
    const double g = p.mech.g_single;
    const double root2 = std::sqrt(2.0);
    const double re_a = s.alpha.real();
    const double im_a = s.alpha.imag();

    Matrix6d a = Matrix6d::Zero();
    // Plasmon block, detuning shifted by g * x_m.
    a(0, 0) = -p.plasmon.gamma_p;
    a(0, 1) = det_p;
    a(1, 0) = -det_p;
    a(1, 1) = -p.plasmon.gamma_p;
    // Radiation pressure: dX_m modulates the plasmon, the plasmon amplitude
    // quadratures push back on dY_m.
    a(0, 2) = root2 * g * im_a;
    a(1, 2) = -root2 * g * re_a;
    a(3, 0) = -root2 * g * re_a;
    a(3, 1) = -root2 * g * im_a;
    // Mechanics.
    a(2, 2) = -p.mech.gamma_m;
    a(2, 3) = p.mech.omega_m;
    a(3, 2) = -p.mech.omega_m;
    a(3, 3) = -p.mech.gamma_m;
    // Fano coupling, plasmon <-> emitter.
    a(0, 5) = f;
    a(1, 4) = -f;
    a(4, 1) = -f * y;
    a(5, 0) = f * y;
    // Emitter block.
    a(4, 4) = -p.emitter.gamma_qe;
    a(4, 5) = det_q;
    a(5, 4) = -det_q;
    a(5, 5) = -p.emitter.gamma_qe;
    return a;
}

DriftMatrix drift_matrix(const SystemParams& p, const MeanFieldState& s) {
    const Matrix6d lab = meanfield_jacobian(p, s);

    DriftMatrix out;
    out.gauge_angle = (s.alpha == ComplexAmplitude{0.0, 0.0}) ? 0.0 : std::arg(s.alpha);

    // Rotate plasmon and emitter quadratures by -gauge_angle; mechanics is
    // untouched. This turns the coupling columns into pure -sqrt(2)|G| entries.
    const double c = std::cos(out.gauge_angle);
    const double sn = std::sin(out.gauge_angle);
    Matrix6d t = Matrix6d::Identity();
    t(0, 0) = c;
    t(0, 1) = sn;
    t(1, 0) = -sn;
    t(1, 1) = c;
    t(4, 4) = c;
    t(4, 5) = sn;
    t(5, 4) = -sn;
    t(5, 5) = c;

    out.a = t * lab * t.transpose();
    // The gauge makes these exact; enforce the zeros the rotation guarantees.
    out.a(0, 2) = 0.0;
    out.a(3, 1) = 0.0;
    const double coupling = -std::sqrt(2.0) * p.mech.g_single * std::abs(s.alpha);
    out.a(1, 2) = coupling;
    out.a(3, 0) = coupling;
    return out;
}

DiffusionMatrix diffusion_matrix(const SystemParams& p) {
    require_valid(p);
    DiffusionMatrix d;
    const double mech = p.mech.gamma_m * (2.0 * p.mech.n_bar + 1.0);
    d.d.diagonal() << p.plasmon.gamma_p, p.plasmon.gamma_p, mech, mech, p.emitter.gamma_qe,
        p.emitter.gamma_qe;
    return d;
}

StabilityResult is_stable(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw std::invalid_argument("is_stable: matrix must be square");
    }
    const Eigen::EigenSolver<Eigen::MatrixXd> eig(a, /*computeEigenvectors=*/false);
    const double abscissa = eig.eigenvalues().real().maxCoeff();
    return StabilityResult{abscissa < -stability_margin, abscissa};
}

StabilityResult is_stable(const DriftMatrix& a) {
    return is_stable(Eigen::MatrixXd(a.a));
}

Eigen::MatrixXd solve_lyapunov_dense(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                     std::string* warning) {
    require_square_same(a, d);
    const StabilityResult stab = is_stable(a);
    if (!stab.stable) {
        std::ostringstream oss;
        oss << "solve_lyapunov: drift matrix is not stable (spectral abscissa " << stab.abscissa
            << ")";
        throw PhysicsError(oss.str());
    }

    const Eigen::Index n = a.rows();
    const Eigen::Index nn = n * n;

    // Kronecker-sum system (I (x) A + A (x) I) vec(V) = -vec(D), assembled and
    // solved in extended precision: the timescale spread of the physical
    // defaults puts the condition number near 1e10, which double precision
    // alone would turn into ~1e-6 errors in the covariance.
    const MatrixXld a_ld = a.cast<long double>();
    MatrixXld k = MatrixXld::Zero(nn, nn);
    // I (x) A: block-diagonal copies of A (the A V term in column-major vec).
    for (Eigen::Index j = 0; j < n; ++j) {
        k.block(j * n, j * n, n, n) = a_ld;
    }
    // A (x) I: A(bi, bj) * I at block (bi, bj) (the V A^T term).
    for (Eigen::Index bi = 0; bi < n; ++bi) {
        for (Eigen::Index bj = 0; bj < n; ++bj) {
            for (Eigen::Index r = 0; r < n; ++r) {
                k(bi * n + r, bj * n + r) += a_ld(bi, bj);
            }
        }
    }

    VectorXld rhs(nn);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            rhs[j * n + i] = -static_cast<long double>(d(i, j));
        }
    }

    const Eigen::PartialPivLU<MatrixXld> lu(k);
    VectorXld x = lu.solve(rhs);
    // One step of iterative refinement.
    x += lu.solve(rhs - k * x);

    if (warning != nullptr) {
        warning->clear();
        const long double rcond = lu.rcond();
        if (rcond > 0.0L && 1.0L / rcond > condition_warning_threshold) {
            std::ostringstream oss;
            oss << "ill-conditioned Lyapunov system (condition ~ "
                << static_cast<double>(1.0L / rcond) << ")";
            *warning = oss.str();
        }
    }

    MatrixXld v_ld(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            v_ld(i, j) = x[j * n + i];
        }
    }
    v_ld = ((v_ld + v_ld.transpose()) / 2.0L).eval();
    Eigen::MatrixXd v = v_ld.cast<double>();

    const double residual = (a * v + v * a.transpose() + d).norm();
    if (residual > 1e-10 * d.norm()) {
        std::ostringstream oss;
        oss << "solve_lyapunov: residual " << residual << " exceeds 1e-10 * ||d|| = "
            << 1e-10 * d.norm();
        throw PhysicsError(oss.str());
    }
    return v;
}

CovarianceMatrix solve_lyapunov(const DriftMatrix& a, const DiffusionMatrix& d) {
    CovarianceMatrix cov;
    cov.v = solve_lyapunov_dense(a.a, d.d, &cov.warning);
    return cov;
}

Eigen::MatrixXd integrate_covariance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                     const Eigen::MatrixXd& v0, double t_final, double dt) {
    require_square_same(a, d);
    if (v0.rows() != a.rows() || v0.cols() != a.cols()) {
        throw std::invalid_argument("integrate_covariance: v0 size mismatch");
    }
    if (!(dt > 0.0) || !std::isfinite(dt) || !(t_final >= 0.0) || !std::isfinite(t_final)) {
        throw std::invalid_argument("integrate_covariance: need dt > 0 and t_final >= 0");
    }
    if (dt * a.norm() >= 0.1) {
        throw std::invalid_argument("integrate_covariance: step-size violation, require "
                                    "dt * ||a|| < 0.1");
    }

    const auto flow = [&](const Eigen::MatrixXd& v) -> Eigen::MatrixXd {
        return a * v + v * a.transpose() + d;
    };

    const long steps = std::max(1L, static_cast<long>(std::ceil(t_final / dt)));
    const double h = t_final / static_cast<double>(steps);
    Eigen::MatrixXd v = v0;
    for (long s = 0; s < steps; ++s) {
        const Eigen::MatrixXd k1 = flow(v);
        const Eigen::MatrixXd k2 = flow(v + 0.5 * h * k1);
        const Eigen::MatrixXd k3 = flow(v + 0.5 * h * k2);
        const Eigen::MatrixXd k4 = flow(v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        v = ((v + v.transpose()) / 2.0).eval();
        if (!v.allFinite()) {
            std::ostringstream oss;
            oss << "integrate_covariance: covariance blew up at t = "
                << static_cast<double>(s + 1) * h << " (drift likely unstable)";
            throw PhysicsError(oss.str());
        }
    }
    return v;
}

CovarianceMatrix integrate_covariance(const DriftMatrix& a, const DiffusionMatrix& d,
                                      const CovarianceMatrix& v0, double t_final, double dt) {
    CovarianceMatrix out;
    out.v = integrate_covariance(Eigen::MatrixXd(a.a), Eigen::MatrixXd(d.d), v0.v, t_final, dt);
    return out;
}

Eigen::MatrixXd symplectic_form(int n_modes) {
    if (n_modes <= 0) {
        throw std::invalid_argument("symplectic_form: need n_modes > 0");
    }
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int m = 0; m < n_modes; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

double physicality_violation(const Eigen::MatrixXd& v) {
    if (v.rows() != v.cols() || v.rows() % 2 != 0 || v.rows() == 0) {
        throw std::invalid_argument("physicality_violation: covariance must be 2N x 2N");
    }
    const int n_modes = static_cast<int>(v.rows()) / 2;
    const std::complex<double> half_i{0.0, 0.5};
    Eigen::MatrixXcd h = v.cast<std::complex<double>>() +
                         half_i * symplectic_form(n_modes).cast<std::complex<double>>();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h,
                                                              Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

} // namespace fanomech
