// quantumness.hpp — single-mode squeezing extraction and the
// entanglement-potential nonclassicality measure.
//
// EP is the logarithmic negativity of the two-mode Gaussian state obtained by
// mixing the mode with vacuum on a 50/50 beam splitter. For a Gaussian input
// EP > 0 exactly when some quadrature variance drops below the vacuum 1/2.
// The measure is evaluated on the reduced (traced-out) state of the mode.
#pragma once

#include "fanomech/fluctuations.hpp"

#include <Eigen/Dense>

namespace fanomech {

enum class Mode : int {
    Plasmon = 0,
    Mechanics = 1,
    Emitter = 2,
};

struct SingleModeCM {
    Eigen::Matrix2d v2 = 0.5 * Eigen::Matrix2d::Identity();
};

struct TwoModeCM {
    Eigen::Matrix4d v4 = 0.5 * Eigen::Matrix4d::Identity();
};

struct QuadratureVariance {
    double variance = 0.0; // smallest eigenvalue of the 2x2 block
    double angle = 0.0;    // principal axis, radians in [0, pi)
};

// 2x2 diagonal block of a multimode covariance (the Gaussian partial trace).
// Throws std::out_of_range for an index beyond the stored modes.
SingleModeCM reduced_mode(const CovarianceMatrix& v, Mode mode);
SingleModeCM reduced_mode(const CovarianceMatrix& v, int mode_index);

// Minimum quadrature variance and its axis; squeezing iff variance < 1/2.
QuadratureVariance min_quadrature_variance(const SingleModeCM& m);

// Mix the mode with vacuum on a 50/50 beam splitter: S (v2 (+) I/2) S^T.
TwoModeCM split_on_beamsplitter(const SingleModeCM& m);

// Logarithmic negativity E_N = max(0, -ln 2 nu-), nu- the smaller symplectic
// eigenvalue of the partially transposed covariance. Natural-log convention.
// Unphysical input beyond the 1e-10 tolerance is rejected; within tolerance
// the eigenvalue is clipped to the vacuum boundary.
double log_negativity(const TwoModeCM& t);

// EP = log_negativity(split_on_beamsplitter(m)).
double entanglement_potential(const SingleModeCM& m);

} // namespace fanomech
