#include "semimoment/moment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "semimoment/errors.hpp"
#include "semimoment/kernels.hpp"
#include "semimoment/linalg.hpp"

namespace semimoment {

// ----------------------------------------------------------- AtomicMeasure

AtomicMeasure::AtomicMeasure(std::vector<Point> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw ArgumentError("atomic measure needs at least one atom");
  if (points_.size() != weights_.size()) throw ArgumentError("atomic measure: points and weights differ in length");
  const std::size_t d = points_.front().size();
  if (d == 0) throw ArgumentError("atomic measure: points need dimension >= 1");
  for (const auto& x : points_)
    if (x.size() != d) throw ArgumentError("atomic measure: points differ in dimension");
  for (double w : weights_)
    if (!(w > 0.0) || !std::isfinite(w)) throw ArgumentError("atomic measure: weights must be finite and > 0");
}

double AtomicMeasure::total_mass() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

double AtomicMeasure::integrate(const Polynomial& p) const {
  double s = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) s += weights_[i] * p.eval(points_[i]);
  return s;
}

double AtomicMeasure::integrate_abs(const Polynomial& p) const {
  double s = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) s += weights_[i] * p.eval_abs(points_[i]);
  return s;
}

// -------------------------------------------------------- MomentFunctional

MomentFunctional::MomentFunctional(std::size_t dim, unsigned max_degree, std::vector<double> moments,
                                   std::vector<unsigned> weights)
    : dim_(dim), max_degree_(max_degree), weights_(std::move(weights)), moments_(std::move(moments)) {
  if (dim_ == 0) throw ArgumentError("moment functional dimension must be >= 1");
  if (max_degree_ % 2 != 0) throw ArgumentError("moment functional max_degree must be even");
  if (!weights_.empty()) {
    if (weights_.size() != dim_) throw ArgumentError("moment functional: one weight per variable");
    if (std::all_of(weights_.begin(), weights_.end(), [](unsigned w) { return w == 1; })) weights_.clear();
  }
  basis_ = weighted_basis(dim_, max_degree_, weights_);
  if (moments_.size() != basis_.size())
    throw ArgumentError("moment functional: expected " + std::to_string(basis_.size()) + " moments, got " +
                        std::to_string(moments_.size()));
}

unsigned MomentFunctional::max_weight() const {
  return weights_.empty() ? 1U : *std::max_element(weights_.begin(), weights_.end());
}

bool MomentFunctional::covers(const Monomial& m) const {
  return m.dim() == dim_ && m.weighted_degree(weights_) <= max_degree_;
}

std::size_t MomentFunctional::index_of(const Monomial& m) const {
  if (m.dim() != dim_) throw ArgumentError("moment lookup: monomial dimension mismatch");
  if (!covers(m))
    throw DegreeError("moment of " + m.to_string() + " exceeds degree budget " + std::to_string(max_degree_));
  if (weights_.empty()) return grlex_rank(m);
  auto it = std::lower_bound(basis_.begin(), basis_.end(), m);
  return static_cast<std::size_t>(it - basis_.begin());
}

double MomentFunctional::apply(const Polynomial& p) const {
  if (p.dim() != dim_) throw ArgumentError("apply: polynomial dimension mismatch");
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) s += c * moment(m);
  return s;
}

double MomentFunctional::apply_abs(const Polynomial& p) const {
  if (p.dim() != dim_) throw ArgumentError("apply: polynomial dimension mismatch");
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) s += std::abs(c * moment(m));
  return s;
}

int MomentFunctional::max_level(const Polynomial& g) const {
  const unsigned dg = degree_of(g);
  if (dg > max_degree_) return -1;
  return static_cast<int>((max_degree_ - dg) / (2 * max_weight()));
}

// -------------------------------------------------------------- operations

MomentFunctional functional_from_measure(const AtomicMeasure& mu, unsigned max_degree) {
  if (mu.empty()) throw ArgumentError("functional_from_measure: empty measure");
  if (max_degree % 2 != 0) throw ArgumentError("functional_from_measure: degree must be even");
  auto basis = mono_basis(mu.dim(), max_degree);
  auto moments = kernels::parallel::atom_moments(basis, mu.points(), mu.weights());
  return MomentFunctional(mu.dim(), max_degree, std::move(moments));
}

IndexedSymmetricMatrix localizing_matrix(const MomentFunctional& L, const Polynomial& g, unsigned n) {
  IndexedSymmetricMatrix out;
  out.basis = mono_basis(L.dim(), n);
  kernels::parallel::localizing_entries(L, out.basis, g, out.entries, out.magnitude);
  return out;
}

IndexedSymmetricMatrix moment_matrix(const MomentFunctional& L, unsigned n) {
  return localizing_matrix(L, Polynomial::constant(L.dim(), 1.0), n);
}

EigenCheck check_psd(const IndexedSymmetricMatrix& m, double tol) {
  EigenCheck c;
  auto ext = linalg::extreme_eigenvalues(m.entries);
  c.min_eig = ext.min;
  c.max_eig = ext.max;
  c.scale = linalg::magnitude_scale(m.magnitude);
  c.pass = c.min_eig >= -tol * c.scale;
  return c;
}

PositivityReport check_preorder_positivity(const MomentFunctional& L, const SemiAlgebraicSet& K, unsigned n,
                                           double tol) {
  if (K.dim() != L.dim()) throw ArgumentError("check_preorder_positivity: set and functional differ in dimension");
  auto products = preorder_products(K);
  PositivityReport rep;
  rep.tol = tol;
  rep.level = n;
  rep.generators.resize(products.size());
  for (std::size_t i = 0; i < products.size(); ++i) {
    const int lvl = L.max_level(products[i].poly);
    if (lvl < 0)
      throw DegreeError("preorder product " + products[i].poly.to_string() +
                        " does not fit the functional's degree budget even at level 0");
    auto& g = rep.generators[i];
    g.generator = products[i].poly;
    g.mask = products[i].mask;
    g.degree = products[i].poly.degree();
    g.level = std::min<unsigned>(n, static_cast<unsigned>(lvl));
  }

  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(rep.generators.size());
#pragma omp parallel for schedule(dynamic) if (count > 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      auto& g = rep.generators[static_cast<std::size_t>(i)];
      auto mat = localizing_matrix(L, g.generator, g.level);
      g.size = mat.basis.size();
      g.value = L.apply(g.generator);
      g.eig = check_psd(mat, tol);
    } catch (...) {
#pragma omp critical(semimoment_positivity_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  rep.pass = std::all_of(rep.generators.begin(), rep.generators.end(), [](const auto& g) { return g.eig.pass; });
  return rep;
}

PencilCheck pencil_norm_check(const MomentFunctional& L, const Polynomial& p, double rho, unsigned n, double tol) {
  auto base = moment_matrix(L, n);
  auto twisted = localizing_matrix(L, p * p, n);
  auto spec = linalg::compressed_pencil(twisted.entries, base.entries, kRankCutoff);
  PencilCheck c;
  c.max_eig = spec.max;
  c.threshold = rho * rho;
  c.rank = spec.rank;
  c.pass = c.max_eig <= c.threshold + tol * std::max(1.0, c.threshold);
  if (!c.pass) {
    const auto m = linalg::loewner_margin(spec, c.threshold, true);
    c.pass = m.min_eig >= -tol * m.scale;
  }
  return c;
}

IntervalCheck operator_interval_check(const MomentFunctional& L, const Polynomial& p, double a, double b, unsigned n,
                                      double tol) {
  auto base = moment_matrix(L, n);
  auto twisted = localizing_matrix(L, p, n);
  auto spec = linalg::compressed_pencil(twisted.entries, base.entries, kRankCutoff);
  const double s = std::max({1.0, std::abs(a), std::abs(b)});
  IntervalCheck c;
  c.min_eig = spec.min;
  c.max_eig = spec.max;
  c.lower = a;
  c.upper = b;
  c.rank = spec.rank;
  c.lower_pass = c.min_eig >= a - tol * s;
  c.upper_pass = c.max_eig <= b + tol * s;
  if (!c.lower_pass) {
    const auto m = linalg::loewner_margin(spec, a, false);
    c.lower_pass = m.min_eig >= -tol * m.scale;
  }
  if (!c.upper_pass) {
    const auto m = linalg::loewner_margin(spec, b, true);
    c.upper_pass = m.min_eig >= -tol * m.scale;
  }
  c.pass = c.lower_pass && c.upper_pass;
  return c;
}

AnnihilationCheck ideal_annihilation_check(const MomentFunctional& L, const Polynomial& p, double tol) {
  AnnihilationCheck c;
  c.square_value = std::abs(L.apply(p * p));
  c.value = std::abs(L.apply(p));
  c.pass = c.value <= tol && c.square_value <= tol;
  return c;
}

}  // namespace semimoment
