#include "fanomech/quantumness.hpp"
#include "fanomech/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fanomech {

namespace {

constexpr double physicality_tol = 1e-10;

void require_valid_single_mode(const SingleModeCM& m) {
    const Eigen::Matrix2d& v = m.v2;
    if (!v.allFinite()) {
        throw std::invalid_argument("single-mode covariance has non-finite entries");
    }
    if (std::abs(v(0, 1) - v(1, 0)) > 1e-12 * std::max(1.0, v.norm())) {
        throw std::invalid_argument("single-mode covariance is not symmetric");
    }
    const double det = v.determinant();
    if (det < 0.25 - physicality_tol || v(0, 0) <= 0.0 || v(1, 1) <= 0.0) {
        std::ostringstream oss;
        oss << "single-mode covariance violates the uncertainty relation (det = " << det
            << ", need >= 1/4)";
        throw std::invalid_argument(oss.str());
    }
}

} // namespace

SingleModeCM reduced_mode(const CovarianceMatrix& v, int mode_index) {
    const int n_modes = v.modes();
    if (v.v.rows() != v.v.cols() || v.v.rows() != 2 * n_modes) {
        throw std::invalid_argument("reduced_mode: covariance must be 2N x 2N");
    }
    if (mode_index < 0 || mode_index >= n_modes) {
        std::ostringstream oss;
        oss << "reduced_mode: mode index " << mode_index << " out of range [0, " << n_modes
            << ")";
        throw std::out_of_range(oss.str());
    }
    SingleModeCM m;
    m.v2 = v.v.block<2, 2>(2 * mode_index, 2 * mode_index);
    return m;
}

SingleModeCM reduced_mode(const CovarianceMatrix& v, Mode mode) {
    return reduced_mode(v, static_cast<int>(mode));
}

QuadratureVariance min_quadrature_variance(const SingleModeCM& m) {
    require_valid_single_mode(m);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(m.v2);
    QuadratureVariance out;
    out.variance = eig.eigenvalues()(0);
    const Eigen::Vector2d axis = eig.eigenvectors().col(0);
    double angle = std::atan2(axis(1), axis(0));
    if (angle < 0.0) {
        angle += std::numbers::pi;
    }
    if (angle >= std::numbers::pi) {
        angle -= std::numbers::pi;
    }
    out.angle = angle;
    return out;
}

TwoModeCM split_on_beamsplitter(const SingleModeCM& m) {
    require_valid_single_mode(m);
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    // 50/50 beam splitter acting mode-wise on (X_A, Y_A, X_B, Y_B).
    s(0, 0) = r;
    s(1, 1) = r;
    s(0, 2) = r;
    s(1, 3) = r;
    s(2, 0) = -r;
    s(3, 1) = -r;
    s(2, 2) = r;
    s(3, 3) = r;

    Eigen::Matrix4d input = Eigen::Matrix4d::Zero();
    input.block<2, 2>(0, 0) = m.v2;
    input.block<2, 2>(2, 2) = 0.5 * Eigen::Matrix2d::Identity();

    TwoModeCM out;
    out.v4 = s * input * s.transpose();
    return out;
}

double log_negativity(const TwoModeCM& t) {
    const Eigen::Matrix4d& v = t.v4;
    if (!v.allFinite()) {
        throw std::invalid_argument("log_negativity: covariance has non-finite entries");
    }
    const double violation = physicality_violation(Eigen::MatrixXd(v));
    if (violation < -physicality_tol) {
        std::ostringstream oss;
        oss << "log_negativity: unphysical two-mode covariance (V + i Omega/2 eigenvalue "
            << violation << ")";
        throw std::invalid_argument(oss.str());
    }

    const Eigen::Matrix2d a = v.block<2, 2>(0, 0);
    const Eigen::Matrix2d b = v.block<2, 2>(2, 2);
    const Eigen::Matrix2d c = v.block<2, 2>(0, 2);

    const double delta_tilde = a.determinant() + b.determinant() - 2.0 * c.determinant();
    const double det_v = v.determinant();
    const double disc = std::max(0.0, delta_tilde * delta_tilde - 4.0 * det_v);
    const double nu_sq = std::max(0.0, 0.5 * (delta_tilde - std::sqrt(disc)));
    const double nu_minus = std::sqrt(nu_sq);

    // Clip to the vacuum boundary within the physicality tolerance, so
    // separable states rounded to just below nu = 1/2 report exactly zero.
    if (2.0 * nu_minus >= 1.0 - 2.0 * physicality_tol) {
        return 0.0;
    }
    return -std::log(2.0 * nu_minus);
}

double entanglement_potential(const SingleModeCM& m) {
    return log_negativity(split_on_beamsplitter(m));
}

} // namespace fanomech
