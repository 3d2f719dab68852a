#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "semimoment/polyring.hpp"

namespace semimoment {

/// K_f = { x in R^d : f_j(x) >= 0 for all j }. No generators means R^d.
class SemiAlgebraicSet {
 public:
  explicit SemiAlgebraicSet(std::size_t dim = 1, std::vector<Polynomial> generators = {});

  std::size_t dim() const { return dim_; }
  const std::vector<Polynomial>& generators() const { return generators_; }

 private:
  std::size_t dim_;
  std::vector<Polynomial> generators_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }
};

/// Polynomials h_1..h_n bounded on K_f with their ranges [m_j, M_j].
class BoundedPolySpec {
 public:
  BoundedPolySpec() = default;
  BoundedPolySpec(std::vector<Polynomial> polys, std::vector<Interval> ranges);

  std::size_t size() const { return polys_.size(); }
  const std::vector<Polynomial>& polys() const { return polys_; }
  const std::vector<Interval>& ranges() const { return ranges_; }
  Point values(std::span<const double> x) const;

 private:
  std::vector<Polynomial> polys_;
  std::vector<Interval> ranges_;
};

/// The fiber set K_f intersected with { h = lambda }.
struct FiberProblem {
  SemiAlgebraicSet base;
  Point lambda;
  /// (f_1..f_k, h_1 - l_1, -(h_1 - l_1), ..., h_n - l_n, -(h_n - l_n))
  SemiAlgebraicSet augmented;
};

inline constexpr double kMembershipTolerance = 1e-12;
inline constexpr std::size_t kMaxPreorderGenerators = 16;
inline constexpr std::size_t kMaxSampleDraws = 1'000'000;
inline constexpr double kLambdaTolerance = 1e-9;

/// One product f_1^e_1 ... f_k^e_k of the preorder, e read as a binary counter
/// with bit j selecting f_{j+1}.
struct PreorderProduct {
  std::vector<int> mask;
  Polynomial poly;
};

/// All 2^k products; the first is the constant 1. CapacityError for k > 16.
std::vector<PreorderProduct> preorder_products(const SemiAlgebraicSet& K);
std::vector<Polynomial> preorder_generators(const SemiAlgebraicSet& K);

/// Every generator >= -1e-12 at x.
bool membership(const SemiAlgebraicSet& K, std::span<const double> x);

struct SampleResult {
  std::vector<Point> points;
  std::size_t draws = 0;
  bool low_acceptance = false;  // fewer than requested after kMaxSampleDraws draws
};

/// Seeded uniform rejection sampling of K inside an axis-aligned box.
SampleResult sample(const SemiAlgebraicSet& K, std::span<const Interval> box, std::size_t count,
                    std::uint64_t seed);

struct RangeEstimate {
  Interval range;
  std::size_t samples = 0;
  bool low_acceptance = false;
};

/// Inner estimate [min h, max h] over sampled points of K.
RangeEstimate range_estimate(const SemiAlgebraicSet& K, const Polynomial& h, std::span<const Interval> box,
                             std::size_t count, std::uint64_t seed);

/// DomainError unless lambda lies in the box of ranges (slack 1e-9).
FiberProblem fiber_problem(const SemiAlgebraicSet& K, const BoundedPolySpec& h, std::span<const double> lambda);

// ------------------------------------------------------------------ catalog

enum class FiberClass { compact, line, subset_of_line, point, other };

const char* to_string(FiberClass c);
FiberClass fiber_class_from_string(const std::string& s);

/// The line a + t v carrying a fiber.
struct LineGeometry {
  Point base;
  Point direction;
};

struct FiberInfo {
  FiberClass cls = FiberClass::other;
  std::optional<LineGeometry> line;
};

using FiberClassifier = std::function<FiberInfo(std::span<const double> lambda)>;
/// Draws a candidate point; used where box rejection has negligible acceptance (curves).
using PointDrawer = std::function<Point(std::mt19937_64&)>;

struct Fixture {
  std::string name;
  std::string description;
  SemiAlgebraicSet set;
  BoundedPolySpec bounded;
  std::vector<Interval> box;
  /// Hand-encoded classification of the fiber sets, e.g. "point".
  std::string fiber_summary;
  FiberClassifier classify;
  PointDrawer draw;
};

/// Fixture by name: example1, example1(m,M,c), example2, example3, example4a,
/// example4b, halfline, cylinder, cylinder(disk), cylinder(interval).
/// LookupError for anything else.
Fixture lookup_fixture(const std::string& name);

/// The default-parameter fixtures keyed by name.
std::map<std::string, Fixture> catalog();

std::vector<std::string> catalog_names();

/// Sample a fixture: its drawer when present, box rejection otherwise; every
/// returned point passes membership.
SampleResult sample_fixture(const Fixture& fx, std::size_t count, std::uint64_t seed);

}  // namespace semimoment
