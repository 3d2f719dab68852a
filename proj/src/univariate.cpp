#include "semimoment/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semimoment/errors.hpp"
#include "semimoment/linalg.hpp"

namespace semimoment {

MomentVector1D::MomentVector1D(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ArgumentError("moment vector needs at least m_0");
  if (values_.size() % 2 == 0) throw ArgumentError("moment vector length must be odd (m_0..m_2n)");
}

MomentFunctional MomentVector1D::as_functional() const {
  return MomentFunctional(1, static_cast<unsigned>(values_.size() - 1), values_);
}

IndexedSymmetricMatrix hankel_matrix(const MomentVector1D& m) {
  return moment_matrix(m.as_functional(), static_cast<unsigned>(m.half_degree()));
}

IndexedSymmetricMatrix localized_hankel_matrix(const MomentVector1D& m, const Polynomial& g) {
  if (g.dim() != 1) throw ArgumentError("localized Hankel needs a univariate polynomial");
  auto L = m.as_functional();
  const int level = L.max_level(g);
  if (level < 0) throw DegreeError("localized Hankel: deg g exceeds the moment vector's degree");
  return localizing_matrix(L, g, static_cast<unsigned>(level));
}

double hankel_min_eig(const MomentVector1D& m) { return linalg::extreme_eigenvalues(hankel_matrix(m).entries).min; }

double localized_hankel_min_eig(const MomentVector1D& m, const Polynomial& g) {
  return linalg::extreme_eigenvalues(localized_hankel_matrix(m, g).entries).min;
}

MomentVector1D measure_moments(const AtomicMeasure& mu, std::size_t half_degree) {
  if (mu.dim() != 1) throw ArgumentError("measure_moments: measure must be one-dimensional");
  std::vector<double> out(2 * half_degree + 1, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    double p = mu.weights()[i];
    for (auto& v : out) {
      v += p;
      p *= mu.points()[i][0];
    }
  }
  return MomentVector1D(std::move(out));
}

double moment_mismatch(const AtomicMeasure& mu, const MomentVector1D& m) {
  const auto re = measure_moments(mu, m.half_degree());
  double worst = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    double mag = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) mag += mu.weights()[i] * std::pow(std::abs(mu.points()[i][0]), k);
    mag = std::max({mag, std::abs(m[k]), std::numeric_limits<double>::min()});
    worst = std::max(worst, std::abs(re[k] - m[k]) / mag);
  }
  return worst;
}

QuadratureResult quadrature_atoms(const MomentVector1D& m, double rank_tol) {
  const auto H = hankel_matrix(m);
  const auto ext = linalg::extreme_eigenvalues(H.entries);
  const double scale = linalg::magnitude_scale(H.magnitude);
  if (!(m[0] > 0.0) || ext.min < -rank_tol * scale)
    throw InfeasibleError("indefinite Hankel: minimum eigenvalue " + std::to_string(ext.min) +
                          ", no representing measure");

  const std::size_t n = m.half_degree();
  const double m0 = m[0];
  QuadratureResult res;
  auto finish = [&](std::vector<Point> pts, std::vector<double> w, std::size_t rank, std::size_t matched) {
    res.measure = AtomicMeasure(std::move(pts), std::move(w));
    res.rank = rank;
    res.matched_degree = matched;
    res.rank_deficient = rank < n + 1;
    res.mismatch = moment_mismatch(res.measure, m);
    return res;
  };

  if (n == 0) return finish({{0.0}}, {m0}, 1, 0);

  const double mean = m[1] / m0;
  const double second = m[2] / m0;
  const double var = second - mean * mean;
  if (!(var > rank_tol * std::max(std::abs(second), std::numeric_limits<double>::min())))
    return finish({{mean}}, {m0}, 1, 1);
  const double sd = std::sqrt(var);

  // Moments of y = (t - mean) / sd under the normalized functional.
  const std::size_t len = m.size();
  std::vector<double> c(len, 0.0);
  std::vector<double> binom(len, 0.0);
  binom[0] = 1.0;
  for (std::size_t k = 0; k < len; ++k) {
    if (k > 0)
      for (std::size_t j = k; j > 0; --j) binom[j] += binom[j - 1];
    double s = 0.0;
    double shift = 1.0;  // (-mean)^(k-j), j descending
    for (std::size_t j = k + 1; j-- > 0;) {
      s += binom[j] * shift * m[j];
      shift *= -mean;
    }
    c[k] = s / (m0 * std::pow(sd, static_cast<double>(k)));
  }

  const auto size = static_cast<Eigen::Index>(n + 1);
  Eigen::MatrixXd hn(size, size);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j) hn(i, j) = c[static_cast<std::size_t>(i + j)];
  const double lmax = linalg::extreme_eigenvalues(hn).max;

  // Column-wise upper Cholesky, hn = R^T R, stopping at the first small pivot.
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(size, size);
  Eigen::Index rank = size;
  for (Eigen::Index k = 0; k < size; ++k) {
    for (Eigen::Index i = 0; i < k; ++i) {
      double s = hn(i, k);
      for (Eigen::Index l = 0; l < i; ++l) s -= r(l, i) * r(l, k);
      r(i, k) = s / r(i, i);
    }
    double d = hn(k, k);
    for (Eigen::Index l = 0; l < k; ++l) d -= r(l, k) * r(l, k);
    if (d <= rank_tol * lmax) {
      rank = k;
      break;
    }
    r(k, k) = std::sqrt(d);
  }

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rank, rank);
  for (Eigen::Index j = 0; j < rank; ++j) {
    double a = 0.0;
    if (j + 1 < size) a = r(j, j + 1) / r(j, j);  // free coefficient (0 = mean) when column j+1 is missing
    if (j > 0) a -= r(j - 1, j) / r(j - 1, j - 1);
    jac(j, j) = a;
    if (j + 1 < rank) jac(j, j + 1) = jac(j + 1, j) = r(j + 1, j + 1) / r(j, j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);

  std::vector<Point> pts;
  std::vector<double> w;
  for (Eigen::Index i = 0; i < rank; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    pts.push_back({mean + sd * es.eigenvalues()(i)});
    w.push_back(m0 * v0 * v0);
  }
  const auto rk = static_cast<std::size_t>(rank);
  return finish(std::move(pts), std::move(w), rk, rk == n + 1 ? 2 * n : 2 * rk - 1);
}

Polynomial line_coordinate(std::span<const double> a, std::span<const double> v) {
  if (a.size() != v.size() || a.empty()) throw ArgumentError("line: base point and direction differ in dimension");
  double vv = 0.0;
  for (double x : v) vv += x * x;
  if (!(vv > 0.0)) throw ArgumentError("line: direction must be nonzero");
  const std::size_t d = a.size();
  Polynomial t(d);
  double offset = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    t = t + Polynomial::variable(d, i).scaled(v[i] / vv);
    offset += a[i] * v[i];
  }
  return t - Polynomial::constant(d, offset / vv);
}

MomentVector1D line_restriction(const MomentFunctional& L, std::span<const double> a, std::span<const double> v) {
  if (a.size() != L.dim()) throw ArgumentError("line_restriction: dimension mismatch");
  const Polynomial t = line_coordinate(a, v);
  const std::vector<Polynomial> subs{t};
  std::vector<double> m;
  for (unsigned k = 0;; ++k) {
    Polynomial tk = compose(Polynomial::monomial(Monomial({k})), subs);
    if (L.degree_of(tk) > L.max_degree()) break;
    m.push_back(L.apply(tk));
  }
  if (m.size() % 2 == 0) m.pop_back();
  return MomentVector1D(std::move(m));
}

}  // namespace semimoment
