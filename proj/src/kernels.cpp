#include "semimoment/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef SEMIMOMENT_HAVE_OPENMP
#include <omp.h>
#endif

#include "semimoment/errors.hpp"

namespace semimoment::kernels {

namespace {

// pow_table[i][v][e] = points[i][v]^e for e <= max exponent of variable v.
using PowerTable = std::vector<std::vector<std::vector<double>>>;

PowerTable power_table(std::span<const Monomial> basis, std::span<const Point> points) {
  if (points.empty()) return {};
  const std::size_t d = points.front().size();
  std::vector<unsigned> top(d, 0);
  for (const auto& m : basis) {
    if (m.dim() != d) throw ArgumentError("atom_moments: basis dimension mismatch");
    for (std::size_t v = 0; v < d; ++v) top[v] = std::max(top[v], m[v]);
  }
  PowerTable table(points.size(), std::vector<std::vector<double>>(d));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d) throw ArgumentError("atom_moments: point dimension mismatch");
    for (std::size_t v = 0; v < d; ++v) {
      auto& row = table[i][v];
      row.resize(top[v] + 1);
      row[0] = 1.0;
      for (unsigned e = 1; e <= top[v]; ++e) row[e] = row[e - 1] * points[i][v];
    }
  }
  return table;
}

double moment_entry(const Monomial& m, const PowerTable& table, std::span<const double> weights) {
  double s = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    double t = weights[i];
    for (std::size_t v = 0; v < m.dim(); ++v) t *= table[i][v][m[v]];
    s += t;
  }
  return s;
}

struct GTerm {
  Monomial mono;
  double coef;
};

std::vector<GTerm> terms_of(const Polynomial& g) {
  std::vector<GTerm> out;
  for (const auto& [m, c] : g.terms()) out.push_back({m, c});
  return out;
}

void fill_row(const MomentFunctional& L, std::span<const Monomial> rows, const std::vector<GTerm>& g,
              std::size_t a, Eigen::MatrixXd& entries, Eigen::MatrixXd& magnitude) {
  for (std::size_t b = a; b < rows.size(); ++b) {
    const Monomial ab = rows[a] * rows[b];
    double s = 0.0;
    double mag = 0.0;
    for (const auto& t : g) {
      const double v = t.coef * L.moment(t.mono * ab);
      s += v;
      mag += std::abs(v);
    }
    entries(a, b) = entries(b, a) = s;
    magnitude(a, b) = magnitude(b, a) = mag;
  }
}

void prepare(const MomentFunctional& L, std::span<const Monomial> rows, const Polynomial& g,
             Eigen::MatrixXd& entries, Eigen::MatrixXd& magnitude) {
  if (g.dim() != L.dim()) throw ArgumentError("localizing matrix: polynomial dimension mismatch");
  // Exceptions cannot leave an OpenMP region, so the degree budget is checked up front.
  unsigned row_deg = 0;
  for (const auto& m : rows) row_deg = std::max(row_deg, L.degree_of(m));
  if (!rows.empty() && !g.is_zero() && L.degree_of(g) + 2 * row_deg > L.max_degree())
    throw DegreeError("localizing matrix needs moments beyond the functional's degree budget");
  const auto n = static_cast<Eigen::Index>(rows.size());
  entries.setZero(n, n);
  magnitude.setZero(n, n);
}

void check_weights(std::span<const Point> points, std::span<const double> weights) {
  if (points.size() != weights.size()) throw ArgumentError("atom_moments: points and weights differ in length");
}

}  // namespace

namespace serial {

std::vector<double> atom_moments(std::span<const Monomial> basis, std::span<const Point> points,
                                 std::span<const double> weights) {
  check_weights(points, weights);
  const auto table = power_table(basis, points);
  std::vector<double> out(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) out[k] = moment_entry(basis[k], table, weights);
  return out;
}

void localizing_entries(const MomentFunctional& L, std::span<const Monomial> rows, const Polynomial& g,
                        Eigen::MatrixXd& entries, Eigen::MatrixXd& magnitude) {
  prepare(L, rows, g, entries, magnitude);
  const auto terms = terms_of(g);
  for (std::size_t a = 0; a < rows.size(); ++a) fill_row(L, rows, terms, a, entries, magnitude);
}

}  // namespace serial

namespace parallel {

std::vector<double> atom_moments(std::span<const Monomial> basis, std::span<const Point> points,
                                 std::span<const double> weights) {
  check_weights(points, weights);
  const auto table = power_table(basis, points);
  std::vector<double> out(basis.size());
  const auto n = static_cast<std::ptrdiff_t>(basis.size());
#pragma omp parallel for schedule(static) if (n * static_cast<std::ptrdiff_t>(points.size()) > 4096)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = moment_entry(basis[k], table, weights);
  return out;
}

void localizing_entries(const MomentFunctional& L, std::span<const Monomial> rows, const Polynomial& g,
                        Eigen::MatrixXd& entries, Eigen::MatrixXd& magnitude) {
  prepare(L, rows, g, entries, magnitude);
  const auto terms = terms_of(g);
  const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 4) if (n > 16)
  for (std::ptrdiff_t a = 0; a < n; ++a) fill_row(L, rows, terms, static_cast<std::size_t>(a), entries, magnitude);
}

}  // namespace parallel

int max_threads() {
#ifdef SEMIMOMENT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace semimoment::kernels
