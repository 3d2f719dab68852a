#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "semimoment/measure.hpp"
#include "semimoment/polyring.hpp"
#include "semimoment/semialg.hpp"

namespace semimoment {

/// Truncated linear functional on R[x1..xd], stored as its moment vector.
///
/// The degree budget is normally the total degree. A functional may instead
/// carry positive integer variable weights, in which case a monomial is
/// available iff its weighted degree sum_i w_i e_i is within the budget (the
/// curve lift x1 -> t^2, x2 -> t^3 needs weights (2, 3)). Every monomial in
/// the budget has a stored moment; anything beyond it raises DegreeError.
class MomentFunctional {
 public:
  MomentFunctional() = default;
  /// moments[i] belongs to basis()[i]; max_degree must be even.
  MomentFunctional(std::size_t dim, unsigned max_degree, std::vector<double> moments,
                   std::vector<unsigned> weights = {});

  std::size_t dim() const { return dim_; }
  unsigned max_degree() const { return max_degree_; }
  /// Empty means unit weights.
  const std::vector<unsigned>& weights() const { return weights_; }
  unsigned max_weight() const;
  const std::vector<Monomial>& basis() const { return basis_; }
  const std::vector<double>& moments() const { return moments_; }

  bool covers(const Monomial& m) const;
  /// Index of m in basis(), DegreeError if not covered.
  std::size_t index_of(const Monomial& m) const;
  double moment(const Monomial& m) const { return moments_[index_of(m)]; }
  double apply(const Polynomial& p) const;
  /// Sum |c| * |L(m)| over the terms of p; the size of the terms apply() cancels.
  double apply_abs(const Polynomial& p) const;
  unsigned degree_of(const Polynomial& p) const { return p.weighted_degree(weights_); }
  unsigned degree_of(const Monomial& m) const { return m.weighted_degree(weights_); }

  /// Largest n such that every product g * m_a * m_b with deg m_a, deg m_b <= n
  /// is covered; -1 if not even n = 0 fits.
  int max_level(const Polynomial& g) const;

 private:
  std::size_t dim_ = 0;
  unsigned max_degree_ = 0;
  std::vector<unsigned> weights_;
  std::vector<Monomial> basis_;
  std::vector<double> moments_;
};

/// Symmetric matrix with rows and columns labelled by monomials.
struct IndexedSymmetricMatrix {
  std::vector<Monomial> basis;
  Eigen::MatrixXd entries;
  /// Entrywise sum_c |g_c| |L(m_c m_a m_b)|; bounds the cancellation in entries.
  Eigen::MatrixXd magnitude;
};

/// PSD check of a single matrix.
struct EigenCheck {
  double min_eig = 0.0;
  double max_eig = 0.0;
  double scale = 1.0;  // max(1, ||magnitude||_inf)
  bool pass = false;   // min_eig >= -tol * scale
};

EigenCheck check_psd(const IndexedSymmetricMatrix& m, double tol);

struct GeneratorCheck {
  Polynomial generator;
  std::vector<int> mask;  // epsilon exponents of the preorder product
  unsigned degree = 0;
  unsigned level = 0;
  std::size_t size = 0;
  double value = 0.0;  // L(g)
  EigenCheck eig;
};

struct PositivityReport {
  double tol = 0.0;
  unsigned level = 0;
  std::vector<GeneratorCheck> generators;
  bool pass = false;
};

struct PencilCheck {
  double max_eig = 0.0;
  double threshold = 0.0;  // rho^2
  std::size_t rank = 0;
  bool pass = false;
};

struct IntervalCheck {
  double min_eig = 0.0;
  double max_eig = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t rank = 0;
  bool lower_pass = false;
  bool upper_pass = false;
  bool pass = false;
};

struct AnnihilationCheck {
  double value = 0.0;         // |L(p)|
  double square_value = 0.0;  // |L(p^2)|
  bool pass = false;
};

inline constexpr double kDefaultPsdTol = 1e-8;
inline constexpr double kRankCutoff = 1e-10;

/// Moments sum_i w_i x_i^a for every monomial of degree <= max_degree.
MomentFunctional functional_from_measure(const AtomicMeasure& mu, unsigned max_degree);

/// Entry (a, b) = L(m_a m_b) over mono_basis(d, n).
IndexedSymmetricMatrix moment_matrix(const MomentFunctional& L, unsigned n);

/// Entry (a, b) = L(g m_a m_b) over mono_basis(d, n).
IndexedSymmetricMatrix localizing_matrix(const MomentFunctional& L, const Polynomial& g, unsigned n);

/// Truncated test of L(T_f) >= 0: one localizing matrix per preorder product g,
/// at level min(n, max_level(g)).
PositivityReport check_preorder_positivity(const MomentFunctional& L, const SemiAlgebraicSet& K,
                                           unsigned n, double tol = kDefaultPsdTol);

/// Largest generalized eigenvalue of (M_n(p^2 L), M_n(L)) on the numerical
/// range of M_n(L). Passes iff it is <= rho^2 + tol * max(1, rho^2), or, when
/// that fails, iff rho^2 M_n(L) - M_n(p^2 L) on the same range has minimum
/// eigenvalue >= -tol * scale (see linalg::loewner_margin). The second test
/// absorbs round-off that the B^(-1/2) whitening blows up along nearly
/// singular directions of M_n(L).
PencilCheck pencil_norm_check(const MomentFunctional& L, const Polynomial& p, double rho, unsigned n,
                              double tol = kDefaultPsdTol);

/// Both bounds of a M_n(L) <= M_n(pL) <= b M_n(L) on the range of M_n(L),
/// each with the same fallback as pencil_norm_check.
IntervalCheck operator_interval_check(const MomentFunctional& L, const Polynomial& p, double a, double b,
                                      unsigned n, double tol = kDefaultPsdTol);

/// |L(p)| and |L(p^2)|, both compared against tol.
AnnihilationCheck ideal_annihilation_check(const MomentFunctional& L, const Polynomial& p, double tol);

}  // namespace semimoment
