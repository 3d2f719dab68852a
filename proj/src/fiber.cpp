#include "semimoment/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "semimoment/errors.hpp"

namespace semimoment {

namespace {

bool close(double a, double b) {
  return a == b || std::abs(a - b) <= kFiberGroupingTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

bool close(const Point& a, const Point& b) {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (!close(a[j], b[j])) return false;
  return true;
}

Point h_values(std::span<const Polynomial> h, const Point& x) {
  Point v;
  v.reserve(h.size());
  for (const auto& p : h) v.push_back(p.eval(x));
  return v;
}

void check_h(const AtomicMeasure& mu, std::span<const Polynomial> h) {
  if (mu.empty()) throw ArgumentError("pushforward: empty measure");
  for (const auto& p : h)
    if (p.dim() != mu.dim()) throw ArgumentError("pushforward: h and measure differ in dimension");
}

unsigned even_ceil(unsigned k) { return k + (k % 2); }

unsigned product_degree(const SemiAlgebraicSet& K) {
  unsigned s = 0;
  for (const auto& g : K.generators()) s += g.degree();
  return s;
}

}  // namespace

Pushforward pushforward(const AtomicMeasure& mu, std::span<const Polynomial> h) {
  check_h(mu, h);
  std::vector<Point> vals;
  vals.reserve(mu.size());
  for (const auto& x : mu.points()) vals.push_back(h_values(h, x));

  std::vector<std::size_t> order(mu.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

  Pushforward pf;
  for (std::size_t i : order) {
    auto it = std::find_if(pf.support.begin(), pf.support.end(), [&](const Point& s) { return close(s, vals[i]); });
    if (it == pf.support.end()) {
      pf.support.push_back(vals[i]);
      pf.groups.push_back({i});
    } else {
      pf.groups[static_cast<std::size_t>(it - pf.support.begin())].push_back(i);
    }
  }

  std::vector<std::size_t> perm(pf.support.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return pf.support[a] < pf.support[b]; });
  Pushforward sorted;
  for (std::size_t g : perm) {
    auto group = pf.groups[g];
    std::sort(group.begin(), group.end());
    double mass = 0.0;
    for (std::size_t i : group) mass += mu.weights()[i];
    sorted.support.push_back(pf.support[g]);
    sorted.masses.push_back(mass);
    sorted.groups.push_back(std::move(group));
  }
  return sorted;
}

namespace {

Fiber make_fiber(const AtomicMeasure& mu, const Point& lambda, double mass, const std::vector<std::size_t>& group,
                 unsigned max_degree) {
  std::vector<Point> pts;
  std::vector<double> w, wn;
  for (std::size_t i : group) {
    pts.push_back(mu.points()[i]);
    w.push_back(mu.weights()[i]);
    wn.push_back(mu.weights()[i] / mass);
  }
  AtomicMeasure normalized(pts, std::move(wn));
  return Fiber{lambda, mass, AtomicMeasure(std::move(pts), std::move(w)),
               functional_from_measure(normalized, max_degree)};
}

}  // namespace

FiberDecomposition fiber_functionals(const AtomicMeasure& mu, std::span<const Polynomial> h, unsigned max_degree) {
  auto pf = pushforward(mu, h);
  FiberDecomposition dec;
  dec.h.assign(h.begin(), h.end());
  for (std::size_t g = 0; g < pf.support.size(); ++g)
    dec.fibers.push_back(make_fiber(mu, pf.support[g], pf.masses[g], pf.groups[g], max_degree));
  return dec;
}

namespace {

Polynomial composed(std::span<const Polynomial> h, const Polynomial& q) {
  if (h.empty()) throw ArgumentError("disintegration: need at least one h");
  if (q.dim() != h.size()) throw ArgumentError("disintegration: q needs one variable per h");
  return compose(q, h);
}

}  // namespace

double disintegration_residual(const AtomicMeasure& mu, std::span<const Polynomial> h, const Polynomial& q,
                               const Polynomial& p, unsigned max_degree) {
  check_h(mu, h);
  if (p.dim() != mu.dim()) throw ArgumentError("disintegration: p and measure differ in dimension");
  const Polynomial qh_p = composed(h, q) * p;
  if (qh_p.degree() > max_degree) throw DegreeError("disintegration: deg(q(h) p) exceeds the degree budget");
  const auto L = functional_from_measure(mu, max_degree);
  const double lhs = L.apply(qh_p);
  const auto dec = fiber_functionals(mu, h, max_degree);
  double rhs = 0.0;
  for (const auto& f : dec.fibers) rhs += f.mass * q.eval(f.lambda) * f.functional.apply(p);
  return std::abs(lhs - rhs);
}

double disintegration_scale(const AtomicMeasure& mu, std::span<const Polynomial> h, const Polynomial& q,
                            const Polynomial& p) {
  check_h(mu, h);
  const Polynomial qh_p = composed(h, q) * p;
  return std::max(1.0, mu.integrate_abs(qh_p));
}

namespace {

LineSolve solve_line(const MomentFunctional& L, const LineGeometry& line) {
  LineSolve ls;
  ls.line = line;
  ls.moments = line_restriction(L, line.base, line.direction);
  try {
    ls.quadrature = quadrature_atoms(ls.moments);
    ls.pass = ls.quadrature->mismatch <= kLineMomentMatchTol;
    if (!ls.pass) ls.error = "reconstructed moments differ by " + std::to_string(ls.quadrature->mismatch);
  } catch (const InfeasibleError& e) {
    ls.error = e.what();
  }
  return ls;
}

}  // namespace

Theorem1Report theorem1_pipeline(const SemiAlgebraicSet& K, const BoundedPolySpec& h, const AtomicMeasure& mu,
                                 unsigned n, double tol, const FiberClassifier& classify,
                                 std::span<const Point> extra_lambdas) {
  if (mu.empty()) throw ArgumentError("theorem1_pipeline: empty measure");
  if (mu.dim() != K.dim()) throw ArgumentError("theorem1_pipeline: measure and set differ in dimension");
  for (const auto& p : h.polys())
    if (p.dim() != K.dim()) throw ArgumentError("theorem1_pipeline: h and set differ in dimension");
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (!membership(K, mu.points()[i])) throw MembershipError("atom " + std::to_string(i) + " lies outside K_f");

  Theorem1Report rep;
  const auto L = functional_from_measure(mu, 2 * n + even_ceil(product_degree(K)));
  rep.base = check_preorder_positivity(L, K, n, tol);

  const auto pf = pushforward(mu, h.polys());
  rep.fibers.resize(pf.support.size());

  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(pf.support.size());
#pragma omp parallel for schedule(dynamic) if (count > 1)
  for (std::ptrdiff_t gi = 0; gi < count; ++gi) {
    try {
      const auto g = static_cast<std::size_t>(gi);
      auto& fr = rep.fibers[g];
      fr.lambda = pf.support[g];
      fr.mass = pf.masses[g];
      fr.atom_count = pf.groups[g].size();
      const auto problem = fiber_problem(K, h, fr.lambda);
      const unsigned degree = 2 * n + even_ceil(product_degree(problem.augmented));
      const auto fiber = make_fiber(mu, fr.lambda, fr.mass, pf.groups[g], degree);
      fr.positivity = check_preorder_positivity(fiber.functional, problem.augmented, n, tol);
      FiberInfo info = classify ? classify(fr.lambda) : FiberInfo{};
      fr.cls = info.cls;
      fr.pass = fr.positivity->pass;
      if (info.cls == FiberClass::line && info.line) {
        fr.line_solve = solve_line(fiber.functional, *info.line);
        fr.pass = fr.pass && fr.line_solve->pass;
      }
    } catch (...) {
#pragma omp critical(semimoment_fiber_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& lambda : extra_lambdas) {
    if (lambda.size() != h.size()) throw ArgumentError("theorem1_pipeline: extra lambda has wrong length");
    bool hit = std::any_of(pf.support.begin(), pf.support.end(), [&](const Point& s) { return close(s, lambda); });
    if (hit) continue;
    FiberReport fr;
    fr.lambda = lambda;
    fr.empty = true;
    fr.note = "empty fiber: no atom of the measure maps to this lambda";
    fr.cls = classify ? classify(lambda).cls : FiberClass::other;
    fr.pass = true;
    rep.fibers.push_back(std::move(fr));
  }
  std::stable_sort(rep.fibers.begin(), rep.fibers.end(),
                   [](const FiberReport& a, const FiberReport& b) { return a.lambda < b.lambda; });

  rep.pass = rep.base.pass &&
             std::all_of(rep.fibers.begin(), rep.fibers.end(), [](const FiberReport& f) { return f.pass; });
  return rep;
}

}  // namespace semimoment
