#include "semimoment/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "semimoment/errors.hpp"

namespace semimoment::linalg {

EigenRange extreme_eigenvalues(const Eigen::MatrixXd& sym) {
  if (sym.rows() == 0) return {};
  if (sym.rows() == 1) return {sym(0, 0), sym(0, 0)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

double magnitude_scale(const Eigen::MatrixXd& magnitude) {
  if (magnitude.size() == 0) return 1.0;
  return std::max(1.0, magnitude.rowwise().sum().maxCoeff());
}

PencilSpectrum compressed_pencil(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double rank_cutoff) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw ArgumentError("compressed_pencil: matrix shapes differ");

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    if (b(i, i) > 0.0) keep.push_back(i);
  if (keep.empty()) throw DegenerateError("moment matrix is zero; pencil undefined");

  const auto k = static_cast<Eigen::Index>(keep.size());
  Eigen::VectorXd s(k);
  for (Eigen::Index i = 0; i < k; ++i) s(i) = 1.0 / std::sqrt(b(keep[i], keep[i]));
  Eigen::MatrixXd bs(k, k), as(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      bs(i, j) = s(i) * b(keep[i], keep[j]) * s(j);
      as(i, j) = s(i) * a(keep[i], keep[j]) * s(j);
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(bs);
  const auto& lam = eb.eigenvalues();
  const double lmax = lam(k - 1);
  if (!(lmax > 0.0)) throw DegenerateError("moment matrix has no positive eigenvalue; pencil undefined");

  std::vector<Eigen::Index> range;
  for (Eigen::Index i = 0; i < k; ++i)
    if (lam(i) > rank_cutoff * lmax) range.push_back(i);
  const auto r = static_cast<Eigen::Index>(range.size());

  // W = U_r Lambda_r^{-1/2}; the compressed pencil is W^T a W.
  Eigen::MatrixXd w(k, r);
  for (Eigen::Index j = 0; j < r; ++j) w.col(j) = eb.eigenvectors().col(range[j]) / std::sqrt(lam(range[j]));
  Eigen::MatrixXd c = w.transpose() * as * w;
  c = 0.5 * (c + c.transpose());
  auto ext = extreme_eigenvalues(c);

  Eigen::MatrixXd u(k, r);
  Eigen::VectorXd lr(r);
  for (Eigen::Index j = 0; j < r; ++j) {
    u.col(j) = eb.eigenvectors().col(range[j]);
    lr(j) = lam(range[j]);
  }
  Eigen::MatrixXd ar = u.transpose() * as * u;
  ar = 0.5 * (ar + ar.transpose());
  return {ext.min, ext.max, static_cast<std::size_t>(r), std::move(ar), std::move(lr)};
}

LoewnerMargin loewner_margin(const PencilSpectrum& s, double t, bool upper) {
  Eigen::MatrixXd m = -s.a_range;
  m.diagonal() += t * s.b_range;
  if (!upper) m = -m;
  Eigen::MatrixXd mag = s.a_range.cwiseAbs();
  mag.diagonal() += std::abs(t) * s.b_range;
  return {extreme_eigenvalues(m).min, magnitude_scale(mag)};
}

}  // namespace semimoment::linalg
