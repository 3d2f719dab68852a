#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace semimoment {

using Point = std::vector<double>;

/// Exponent vector x^e in d variables.
///
/// Monomials are totally ordered graded-lexicographically: lower total degree
/// first, and within one degree the exponent of x1 dominates, then x2, ...
/// So mono_basis(2, 2) = [1, x1, x2, x1^2, x1 x2, x2^2].
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<unsigned> exponents);

  static Monomial one(std::size_t dim);
  static Monomial variable(std::size_t dim, std::size_t index);

  std::size_t dim() const { return exps_.size(); }
  unsigned degree() const { return degree_; }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<unsigned>& exponents() const { return exps_; }

  /// Sum of weights[i] * e_i.
  unsigned weighted_degree(std::span<const unsigned> weights) const;

  Monomial operator*(const Monomial& other) const;
  double eval(std::span<const double> x) const;

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  std::strong_ordering operator<=>(const Monomial& other) const;

  std::string to_string() const;

 private:
  std::vector<unsigned> exps_;
  unsigned degree_ = 0;
};

/// Sparse polynomial with real coefficients. The term map never stores an
/// exact zero coefficient; the zero polynomial has no terms.
class Polynomial {
 public:
  using Terms = std::map<Monomial, double>;

  explicit Polynomial(std::size_t dim = 1);
  Polynomial(std::size_t dim, Terms terms);

  static Polynomial constant(std::size_t dim, double c);
  static Polynomial variable(std::size_t dim, std::size_t index);
  static Polynomial monomial(const Monomial& m, double c = 1.0);

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; 0 for the zero polynomial.
  unsigned degree() const;
  unsigned weighted_degree(std::span<const unsigned> weights) const;
  double coefficient(const Monomial& m) const;
  double max_abs_coefficient() const;

  double eval(std::span<const double> x) const;
  /// Evaluation of the polynomial with |coefficients| at |x|; bounds the
  /// magnitude of every partial sum in eval().
  double eval_abs(std::span<const double> x) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& q) const;
  Polynomial operator-(const Polynomial& q) const;
  Polynomial operator*(const Polynomial& q) const;
  Polynomial scaled(double c) const;
  Polynomial pow(unsigned k) const;

  bool operator==(const Polynomial& q) const = default;

  std::string to_string() const;

 private:
  void require_same_dim(const Polynomial& q, const char* op) const;

  std::size_t dim_ = 1;
  Terms terms_;
};

inline Polynomial operator*(double c, const Polynomial& p) { return p.scaled(c); }

/// p with variable i replaced by subs[i], fully expanded.
Polynomial compose(const Polynomial& p, std::span<const Polynomial> subs);

/// Number of monomials of degree <= n in d variables, C(n+d, d).
std::size_t basis_size(std::size_t d, unsigned n);

/// All monomials of degree <= n in d variables, graded-lex order.
std::vector<Monomial> mono_basis(std::size_t d, unsigned n);

/// Position of m inside mono_basis(m.dim(), n) for any n >= m.degree().
std::size_t grlex_rank(const Monomial& m);

/// All monomials with weighted degree <= budget, graded-lex order.
std::vector<Monomial> weighted_basis(std::size_t d, unsigned budget, std::span<const unsigned> weights);

}  // namespace semimoment
