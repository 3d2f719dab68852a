#include "semimoment/counterexample.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "semimoment/errors.hpp"

namespace semimoment {

namespace {

const Polynomial& cube() {
  static const Polynomial p = Polynomial::monomial(Monomial({3}));
  return p;
}

Eigen::MatrixXd hankel_of(const std::vector<double>& m, std::size_t offset, std::size_t size) {
  const auto s = static_cast<Eigen::Index>(size);
  Eigen::MatrixXd h(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j) h(i, j) = m[offset + static_cast<std::size_t>(i + j)];
  return h;
}

// Nearest matrix (Frobenius) with every eigenvalue >= floor.
Eigen::MatrixXd clip_spectrum(const Eigen::MatrixXd& x, double floor) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(floor);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

// Nearest pair (H(m), H3(m)) to (x, y) with m_0 = 1, m_1 = -delta: each free
// moment is the average of every entry it occupies in either matrix.
std::vector<double> average_antidiagonals(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double delta) {
  const auto sx = static_cast<std::size_t>(x.rows());
  const auto sy = static_cast<std::size_t>(y.rows());
  std::vector<double> sum(2 * sx - 1, 0.0), cnt(2 * sx - 1, 0.0);
  for (std::size_t i = 0; i < sx; ++i)
    for (std::size_t j = 0; j < sx; ++j) {
      sum[i + j] += x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      cnt[i + j] += 1.0;
    }
  for (std::size_t i = 0; i < sy; ++i)
    for (std::size_t j = 0; j < sy; ++j) {
      sum[i + j + 3] += y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      cnt[i + j + 3] += 1.0;
    }
  for (std::size_t k = 0; k < sum.size(); ++k) sum[k] /= cnt[k];
  sum[0] = 1.0;
  sum[1] = 0.0 - delta;
  return sum;
}

}  // namespace

double seed_residual(const MomentVector1D& m, double delta) {
  double r = std::max(std::abs(m[0] - 1.0), std::abs(m[1] + delta));
  r = std::max(r, -hankel_min_eig(m));
  if (m.half_degree() >= 2) r = std::max(r, -localized_hankel_min_eig(m, cube()));
  return std::max(r, 0.0);
}

namespace {

struct Attempt {
  std::vector<double> best;
  double residual = std::numeric_limits<double>::infinity();
  bool certified = false;
};

// Dykstra between the product of the two PSD cones (shrunk by kSeedFloor) and
// the affine set of Hankel pairs, run on u_k = m_k / s^k. The substitution
// t -> t / s maps the problem for delta to the one for delta / s, so s only
// changes the metric the projections see.
Attempt dykstra(const SeedSpec& spec, double s) {
  const std::size_t n = spec.n;
  const std::size_t len = 2 * n + 1;
  std::vector<double> pw(len, 1.0);
  for (std::size_t k = 1; k < len; ++k) pw[k] = pw[k - 1] * s;

  std::vector<double> u(len, 0.0), m(len);
  for (std::size_t k = 0; k < spec.warm_start.size(); ++k) u[k] = spec.warm_start[k] / pw[k];
  const double du = spec.delta / s;
  u[0] = 1.0;
  u[1] = 0.0 - du;

  Eigen::MatrixXd hx = hankel_of(u, 0, n + 1), hy = hankel_of(u, 3, n - 1);
  Eigen::MatrixXd px = Eigen::MatrixXd::Zero(hx.rows(), hx.cols());
  Eigen::MatrixXd py = Eigen::MatrixXd::Zero(hy.rows(), hy.cols());
  Attempt a;
  for (std::size_t it = 0; it < spec.max_iter; ++it) {
    const Eigen::MatrixXd cx = clip_spectrum(hx + px, kSeedFloor);
    const Eigen::MatrixXd cy = clip_spectrum(hy + py, kSeedFloor);
    px += hx - cx;
    py += hy - cy;
    u = average_antidiagonals(cx, cy, du);
    hx = hankel_of(u, 0, n + 1);
    hy = hankel_of(u, 3, n - 1);

    for (std::size_t k = 0; k < len; ++k) m[k] = u[k] * pw[k];
    m[0] = 1.0;
    m[1] = 0.0 - spec.delta;
    const double res = seed_residual(MomentVector1D(m), spec.delta);
    if (res < a.residual) {
      a.residual = res;
      a.best = m;
    }
    if (res == 0.0) {
      a.certified = true;
      break;
    }
  }
  return a;
}

}  // namespace

MomentVector1D find_seed(const SeedSpec& spec) {
  if (spec.n < 3) throw ArgumentError("find_seed: n must be at least 3");
  if (!(spec.delta >= 0.0) || !std::isfinite(spec.delta)) throw ArgumentError("find_seed: delta must be >= 0");
  if (!(spec.tol > 0.0)) throw ArgumentError("find_seed: tol must be > 0");
  const std::size_t len = 2 * spec.n + 1;
  if (spec.warm_start.size() > len) throw ArgumentError("find_seed: warm start longer than 2n + 1");

  std::vector<double> x(len, 0.0);
  std::copy(spec.warm_start.begin(), spec.warm_start.end(), x.begin());
  x[0] = 1.0;
  x[1] = 0.0 - spec.delta;
  const double start = seed_residual(MomentVector1D(x), spec.delta);
  if (start == 0.0) return MomentVector1D(std::move(x));

  // Convergence is fastest when delta / s is about kSeedTargetDelta; the
  // neighbouring scales are fallbacks.
  const double s0 = std::max(1.0, spec.delta / kSeedTargetDelta);
  Attempt best{x, start, false};
  for (double f : {1.0, 3.0, 1.0 / 3.0, 10.0, 0.1}) {
    const double s = s0 * f;
    if (s < 1.0 && f != 1.0) continue;
    auto a = dykstra(spec, s);
    if (a.certified) return MomentVector1D(std::move(a.best));
    if (a.residual < best.residual) best = std::move(a);
  }
  throw NonConvergenceError("find_seed: no certified seed after " + std::to_string(spec.max_iter) +
                                " iterations per scale, residual " + std::to_string(best.residual),
                            std::move(best.best), best.residual);
}

MomentVector1D lift_even(const MomentVector1D& m) {
  std::vector<double> out(2 * m.size() - 1, 0.0);
  for (std::size_t k = 0; k < m.size(); ++k) out[2 * k] = m[k];
  return MomentVector1D(std::move(out));
}

MomentFunctional lift_curve(const MomentVector1D& m1) {
  const std::vector<unsigned> w{2, 3};
  unsigned budget = static_cast<unsigned>(m1.size() - 1);
  budget -= budget % 2;
  auto basis = weighted_basis(2, budget, w);
  std::vector<double> moments;
  moments.reserve(basis.size());
  for (const auto& mono : basis) moments.push_back(m1[2 * mono[0] + 3 * mono[1]]);
  return MomentFunctional(2, budget, std::move(moments), w);
}

namespace {

CertificateLeg leg(std::string name, double value, double threshold, bool pass) {
  return CertificateLeg{std::move(name), value, threshold, pass};
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

CounterexampleCertificate verify(const LiftedFunctionals& lifted, unsigned t, double tol) {
  const MomentFunctional& L2 = lifted.curve;
  if (L2.dim() != 2) throw ArgumentError("verify: the curve functional must have two variables");
  const int top = L2.max_level(Polynomial::constant(2, 1.0));
  if (top < static_cast<int>(t))
    throw DegreeError("verify: M_" + std::to_string(t) + "(L2) needs weighted degree " +
                      std::to_string(2 * t * L2.max_weight()) + ", budget is " + std::to_string(L2.max_degree()));

  CounterexampleCertificate c;
  c.seed = lifted.seed;
  c.even_lift = lifted.even_lift;
  c.curve = L2;
  c.t = t;
  c.tol = tol;

  if (lifted.seed) {
    const auto H = hankel_matrix(*lifted.seed);
    c.hankel = check_psd(H, tol);
    c.legs.push_back(leg("hankel", c.hankel->min_eig, -tol * c.hankel->scale, c.hankel->pass));
    const auto Hx3 = localized_hankel_matrix(*lifted.seed, cube());
    c.localized = check_psd(Hx3, tol);
    c.legs.push_back(leg("localized_hankel", c.localized->min_eig, -tol * c.localized->scale, c.localized->pass));
  }

  c.moment_matrix = check_psd(moment_matrix(L2, t), tol);
  c.legs.push_back(leg("moment_matrix", c.moment_matrix.min_eig, -tol * c.moment_matrix.scale, c.moment_matrix.pass));

  const Polynomial x1 = Polynomial::variable(2, 0);
  const Polynomial x2 = Polynomial::variable(2, 1);
  const Polynomial cusp = x1.pow(3) - x2.pow(2);
  double worst = 0.0;
  for (const auto& r : {Polynomial::constant(2, 1.0), x1, x2}) {
    const Polynomial q = cusp * r;
    if (L2.degree_of(q) > L2.max_degree()) break;
    c.annihilation_values.push_back(L2.apply(q));
    worst = std::max(worst, std::abs(c.annihilation_values.back()));
  }
  if (L2.degree_of(cusp * cusp) <= L2.max_degree()) {
    const auto ann = ideal_annihilation_check(L2, cusp, 0.0);
    c.annihilation_square = ann.square_value;
    worst = std::max(worst, ann.square_value);
  }
  c.legs.push_back(leg("annihilation", worst, 0.0, worst == 0.0));

  // x1 = s^2 on the parametrized curve (s^2, s^3).
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  c.curve_min_x1 = std::numeric_limits<double>::infinity();
  bool on_curve = true;
  for (std::size_t i = 0; i < kCurveSamples; ++i) {
    const double s = unif(rng);
    const Point x{s * s, s * s * s};
    on_curve = on_curve && std::abs(cusp.eval(x)) <= 1e-12 * std::max(1.0, std::pow(std::abs(s), 6));
    c.curve_min_x1 = std::min(c.curve_min_x1, x1.eval(x));
  }
  c.curve_samples = kCurveSamples;
  c.legs.push_back(leg("curve_nonnegativity", c.curve_min_x1, 0.0, on_curve && c.curve_min_x1 >= 0.0));

  for (const auto& l : c.legs)
    if (!l.pass) throw VerificationError(l.name, "value " + format_value(l.value) + " against threshold " +
                                                     format_value(l.threshold));

  c.witness = L2.apply(x1);
  c.is_counterexample = c.witness < 0.0;
  if (c.is_counterexample) {
    c.note = "L2 is nonnegative on squares up to degree " + std::to_string(t) + " and L2(x1) = " +
             format_value(c.witness) + " < 0 although x1 >= 0 on the curve: not a moment functional";
  } else if (c.witness == 0.0) {
    c.note = "L2(x1)=0, not a counterexample";
  } else {
    c.note = "L2(x1) = " + format_value(c.witness) + " > 0, not a counterexample";
  }
  return c;
}

}  // namespace semimoment
