#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace semimoment::linalg {

struct EigenRange {
  double min = 0.0;
  double max = 0.0;
};

/// Extreme eigenvalues of a symmetric matrix; {0, 0} for an empty one.
EigenRange extreme_eigenvalues(const Eigen::MatrixXd& sym);

/// max(1, ||m||_inf) for a nonnegative magnitude matrix.
double magnitude_scale(const Eigen::MatrixXd& magnitude);

struct PencilSpectrum {
  double min = 0.0;
  double max = 0.0;
  std::size_t rank = 0;
  /// U^T a U and the eigenvalues of b on the retained range (orthonormal U,
  /// after the diagonal scaling).
  Eigen::MatrixXd a_range;
  Eigen::VectorXd b_range;
};

/// Generalized eigenvalues of (a, b) restricted to the numerical range of the
/// PSD matrix b.
///
/// Both matrices are first congruence-scaled by diag(b)^(-1/2) (rows with a
/// nonpositive diagonal drop out), then b's eigenvectors with eigenvalue above
/// rank_cutoff * lambda_max span the retained range. Throws DegenerateError if
/// nothing is retained.
PencilSpectrum compressed_pencil(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double rank_cutoff);

struct LoewnerMargin {
  double min_eig = 0.0;
  double scale = 1.0;  // max(1, ||t B + |A| ||_inf) on the range
};

/// Smallest eigenvalue of t B - A (upper = true) or A - t B on the retained
/// range, without the B^(-1/2) whitening. Near-singular directions of b make
/// the generalized eigenvalues lose about eps / lambda_min of accuracy; this
/// form does not.
LoewnerMargin loewner_margin(const PencilSpectrum& s, double t, bool upper);

}  // namespace semimoment::linalg
