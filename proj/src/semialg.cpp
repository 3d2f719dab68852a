#include "semimoment/semialg.hpp"

#include <algorithm>
#include <limits>

#include "semimoment/errors.hpp"

namespace semimoment {

SemiAlgebraicSet::SemiAlgebraicSet(std::size_t dim, std::vector<Polynomial> generators)
    : dim_(dim), generators_(std::move(generators)) {
  if (dim_ == 0) throw ArgumentError("semi-algebraic set dimension must be >= 1");
  for (const auto& g : generators_)
    if (g.dim() != dim_) throw ArgumentError("generator dimension does not match set dimension");
}

BoundedPolySpec::BoundedPolySpec(std::vector<Polynomial> polys, std::vector<Interval> ranges)
    : polys_(std::move(polys)), ranges_(std::move(ranges)) {
  if (polys_.size() != ranges_.size()) throw ArgumentError("bounded spec: one range per polynomial");
  for (const auto& r : ranges_)
    if (!(r.lo <= r.hi)) throw ArgumentError("bounded spec: range needs lo <= hi");
  for (const auto& p : polys_)
    if (p.dim() != polys_.front().dim()) throw ArgumentError("bounded spec: polynomials must share a dimension");
}

Point BoundedPolySpec::values(std::span<const double> x) const {
  Point v;
  v.reserve(polys_.size());
  for (const auto& h : polys_) v.push_back(h.eval(x));
  return v;
}

std::vector<PreorderProduct> preorder_products(const SemiAlgebraicSet& K) {
  const auto& f = K.generators();
  const std::size_t k = f.size();
  if (k > kMaxPreorderGenerators)
    throw CapacityError("preorder enumeration capped at 16 generators (2^k products), got " + std::to_string(k));
  std::vector<PreorderProduct> out;
  out.reserve(std::size_t{1} << k);
  for (std::size_t eps = 0; eps < (std::size_t{1} << k); ++eps) {
    PreorderProduct prod{std::vector<int>(k, 0), Polynomial::constant(K.dim(), 1.0)};
    for (std::size_t j = 0; j < k; ++j) {
      if ((eps >> j) & 1U) {
        prod.mask[j] = 1;
        prod.poly = prod.poly * f[j];
      }
    }
    out.push_back(std::move(prod));
  }
  return out;
}

std::vector<Polynomial> preorder_generators(const SemiAlgebraicSet& K) {
  std::vector<Polynomial> out;
  for (auto& p : preorder_products(K)) out.push_back(std::move(p.poly));
  return out;
}

bool membership(const SemiAlgebraicSet& K, std::span<const double> x) {
  if (x.size() != K.dim()) throw ArgumentError("membership: point dimension mismatch");
  return std::all_of(K.generators().begin(), K.generators().end(),
                     [&](const Polynomial& g) { return g.eval(x) >= -kMembershipTolerance; });
}

namespace {

void check_box(std::span<const Interval> box, std::size_t dim) {
  if (box.size() != dim) throw ArgumentError("sampling box dimension mismatch");
  for (const auto& iv : box)
    if (!(iv.lo <= iv.hi)) throw ArgumentError("sampling box interval needs lo <= hi");
}

template <class Draw>
SampleResult rejection_loop(const SemiAlgebraicSet& K, std::size_t count, std::uint64_t seed, Draw draw) {
  SampleResult res;
  std::mt19937_64 rng(seed);
  while (res.points.size() < count && res.draws < kMaxSampleDraws) {
    Point x = draw(rng);
    ++res.draws;
    if (membership(K, x)) res.points.push_back(std::move(x));
  }
  res.low_acceptance = res.points.size() < count;
  return res;
}

}  // namespace

SampleResult sample(const SemiAlgebraicSet& K, std::span<const Interval> box, std::size_t count,
                    std::uint64_t seed) {
  check_box(box, K.dim());
  std::vector<Interval> b(box.begin(), box.end());
  return rejection_loop(K, count, seed, [&b](std::mt19937_64& rng) {
    Point x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) x[i] = std::uniform_real_distribution<double>(b[i].lo, b[i].hi)(rng);
    return x;
  });
}

SampleResult sample_fixture(const Fixture& fx, std::size_t count, std::uint64_t seed) {
  if (!fx.draw) return sample(fx.set, fx.box, count, seed);
  return rejection_loop(fx.set, count, seed, fx.draw);
}

RangeEstimate range_estimate(const SemiAlgebraicSet& K, const Polynomial& h, std::span<const Interval> box,
                             std::size_t count, std::uint64_t seed) {
  if (h.dim() != K.dim()) throw ArgumentError("range_estimate: polynomial dimension mismatch");
  auto s = sample(K, box, count, seed);
  if (s.points.empty()) throw EstimationError("range_estimate: no sample point found in the set");
  RangeEstimate r{{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()},
                  s.points.size(), s.low_acceptance};
  for (const auto& x : s.points) {
    double v = h.eval(x);
    r.range.lo = std::min(r.range.lo, v);
    r.range.hi = std::max(r.range.hi, v);
  }
  return r;
}

FiberProblem fiber_problem(const SemiAlgebraicSet& K, const BoundedPolySpec& h, std::span<const double> lambda) {
  if (lambda.size() != h.size()) throw ArgumentError("fiber_problem: lambda length must equal number of h");
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (h.polys()[j].dim() != K.dim()) throw ArgumentError("fiber_problem: h dimension mismatch");
    if (!h.ranges()[j].contains(lambda[j], kLambdaTolerance))
      throw DomainError("fiber_problem: lambda_" + std::to_string(j + 1) + " outside [m, M]");
  }
  std::vector<Polynomial> gens = K.generators();
  for (std::size_t j = 0; j < h.size(); ++j) {
    Polynomial shifted = h.polys()[j] - Polynomial::constant(K.dim(), lambda[j]);
    gens.push_back(shifted);
    gens.push_back(-shifted);
  }
  return FiberProblem{K, Point(lambda.begin(), lambda.end()), SemiAlgebraicSet(K.dim(), std::move(gens))};
}

}  // namespace semimoment
