#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "semimoment/measure.hpp"
#include "semimoment/moment.hpp"
#include "semimoment/polyring.hpp"

namespace semimoment {

/// Moments m_0..m_2n of a functional on R[t]; the length is always odd.
class MomentVector1D {
 public:
  MomentVector1D() = default;
  explicit MomentVector1D(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  /// n for a vector m_0..m_2n.
  std::size_t half_degree() const { return (values_.size() - 1) / 2; }
  double operator[](std::size_t k) const { return values_[k]; }
  const std::vector<double>& values() const { return values_; }

  MomentFunctional as_functional() const;

 private:
  std::vector<double> values_;
};

/// Hankel matrix H[i][j] = m_{i+j}, 0 <= i, j <= n, with its magnitude matrix.
IndexedSymmetricMatrix hankel_matrix(const MomentVector1D& m);

/// H_g[i][j] = sum_c g_c m_{i+j+c} at the largest size whose indices fit.
/// DegreeError if deg g > 2n.
IndexedSymmetricMatrix localized_hankel_matrix(const MomentVector1D& m, const Polynomial& g);

double hankel_min_eig(const MomentVector1D& m);
double localized_hankel_min_eig(const MomentVector1D& m, const Polynomial& g);

inline constexpr double kDefaultRankTol = 1e-10;

struct QuadratureResult {
  AtomicMeasure measure;
  /// Numerical rank of the Hankel matrix = number of atoms.
  std::size_t rank = 0;
  /// Moments m_0..m_matched are reproduced by construction.
  std::size_t matched_degree = 0;
  /// True when the recurrence broke down before the full Hankel size.
  bool rank_deficient = false;
  /// Max over all supplied k of |int t^k - m_k| / int |t|^k.
  double mismatch = 0.0;
};

/// Gauss quadrature reconstruction from moments via the Jacobi matrix.
///
/// The moments are first centred and scaled by their mean and standard
/// deviation, the three-term recurrence coefficients are read off a Cholesky
/// factorization of the Hankel matrix (Golub-Welsch), and the atoms and
/// weights come from the symmetric eigendecomposition of the Jacobi matrix.
/// A pivot below rank_tol * lambda_max ends the recurrence and fixes the rank.
///
/// If the Hankel matrix has full rank n + 1 the last diagonal recurrence
/// coefficient is not determined by m_0..m_2n; it is set to the mean, giving
/// n + 1 atoms that reproduce every supplied moment.
///
/// Throws InfeasibleError ("indefinite Hankel") when the Hankel matrix has an
/// eigenvalue below -rank_tol * scale or m_0 <= 0.
QuadratureResult quadrature_atoms(const MomentVector1D& m, double rank_tol = kDefaultRankTol);

/// Moments of a one-dimensional atomic measure, m_0..m_{2n}.
MomentVector1D measure_moments(const AtomicMeasure& mu, std::size_t half_degree);

/// The relative mismatch metric of QuadratureResult::mismatch.
double moment_mismatch(const AtomicMeasure& mu, const MomentVector1D& m);

/// The affine coordinate t(x) = <x - a, v> / <v, v> along the line a + t v.
Polynomial line_coordinate(std::span<const double> a, std::span<const double> v);

/// m_k = L(t(x)^k) for every k the degree budget allows (trimmed to odd length).
MomentVector1D line_restriction(const MomentFunctional& L, std::span<const double> a, std::span<const double> v);

}  // namespace semimoment
