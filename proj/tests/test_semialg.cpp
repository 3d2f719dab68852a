#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "semimoment/errors.hpp"
#include "semimoment/semialg.hpp"

using namespace semimoment;

namespace {

Polynomial x(std::size_t d, std::size_t i) { return Polynomial::variable(d, i); }
Polynomial c(std::size_t d, double v) { return Polynomial::constant(d, v); }

}  // namespace

TEST_CASE("preorder generators") {
  const auto f1 = x(1, 0), f2 = c(1, 1.0) - x(1, 0);
  auto one = preorder_generators(SemiAlgebraicSet(1, {f1}));
  REQUIRE(one.size() == 2);
  CHECK(one[0] == c(1, 1.0));
  CHECK(one[1] == f1);

  auto two = preorder_generators(SemiAlgebraicSet(1, {f1, f2}));
  REQUIRE(two.size() == 4);
  CHECK(two[1] == f1);
  CHECK(two[2] == f2);
  CHECK(two[3] == f1 * f2);

  auto none = preorder_generators(SemiAlgebraicSet(2, {}));
  REQUIRE(none.size() == 1);
  CHECK(none[0] == c(2, 1.0));

  const auto prods = preorder_products(SemiAlgebraicSet(1, {f1, f2}));
  CHECK(prods[3].mask == std::vector<int>{1, 1});
  CHECK(prods[2].mask == std::vector<int>{0, 1});
}

TEST_CASE("preorder closure and capacity") {
  const auto fx = lookup_fixture("example3");
  const auto gens = preorder_generators(fx.set);
  const auto& f = fx.set.generators();
  CHECK(gens.size() == (1U << f.size()));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      CHECK(std::find(gens.begin(), gens.end(), f[i] * f[j]) != gens.end());

  std::vector<Polynomial> many(17, x(1, 0));
  CHECK_THROWS_AS(preorder_generators(SemiAlgebraicSet(1, many)), CapacityError);
  many.pop_back();
  CHECK(preorder_generators(SemiAlgebraicSet(1, many)).size() == 65536);
}

TEST_CASE("membership") {
  const SemiAlgebraicSet unit(1, {x(1, 0), c(1, 1.0) - x(1, 0)});
  CHECK(membership(unit, Point{0.5}));
  CHECK(membership(unit, Point{-1e-13}));
  CHECK_FALSE(membership(unit, Point{-1e-11}));

  const auto ex3 = lookup_fixture("example3").set;
  CHECK(membership(ex3, Point{0.5, 3.0}));
  CHECK_FALSE(membership(ex3, Point{2.0, 1.0}));
  CHECK_THROWS_AS(membership(ex3, Point{1.0}), ArgumentError);
  CHECK(membership(SemiAlgebraicSet(3), Point{1e9, -1e9, 0.0}));
}

TEST_CASE("sample") {
  const std::vector<Interval> box2{{-1.0, 1.0}, {2.0, 3.0}};
  auto free = sample(SemiAlgebraicSet(2), box2, 5, 0);
  REQUIRE(free.points.size() == 5);
  CHECK(free.draws == 5);
  for (const auto& p : free.points) {
    CHECK(box2[0].contains(p[0]));
    CHECK(box2[1].contains(p[1]));
  }

  const std::vector<Interval> box1{{-1.0, 1.0}};
  auto half = sample(SemiAlgebraicSet(1, {x(1, 0)}), box1, 100, 3);
  CHECK(half.points.size() == 100);
  for (const auto& p : half.points) CHECK(p[0] >= 0.0);

  const auto ex1 = lookup_fixture("example1(1,2,0)");
  const std::vector<Interval> wide{{0.1, 3.0}, {0.1, 3.0}};
  auto s1 = sample(ex1.set, wide, 200, 9);
  CHECK(s1.points.size() == 200);
  for (const auto& p : s1.points) {
    CHECK(p[0] * p[1] >= 1.0 - 1e-12);
    CHECK(p[0] * p[1] <= 2.0 + 1e-12);
  }

  auto again = sample(ex1.set, wide, 200, 9);
  CHECK(again.points == s1.points);
  CHECK(sample(ex1.set, wide, 200, 10).points != s1.points);

  auto empty = sample(SemiAlgebraicSet(1, {c(1, -1.0)}), box1, 3, 0);
  CHECK(empty.points.empty());
  CHECK(empty.low_acceptance);
  CHECK(empty.draws == kMaxSampleDraws);
  CHECK_THROWS_AS(sample(ex1.set, box1, 3, 0), ArgumentError);
}

TEST_CASE("every fixture sample passes membership") {
  for (const auto& [name, fx] : catalog()) {
    CAPTURE(name);
    auto s = sample_fixture(fx, 200, 42);
    CHECK(s.points.size() == 200);
    for (const auto& p : s.points) CHECK(membership(fx.set, p));
  }
}

TEST_CASE("range estimates") {
  const std::vector<Interval> box{{0.0, 1.0}, {-5.0, 5.0}};
  const auto k = lookup_fixture("cylinder(interval)").set;
  auto five = range_estimate(k, c(2, 5.0), box, 50, 0);
  CHECK(five.range.lo == 5.0);
  CHECK(five.range.hi == 5.0);

  auto r = range_estimate(k, x(2, 0), box, 10000, 1);
  CHECK(r.range.lo >= 0.0);
  CHECK(r.range.hi <= 1.0);
  CHECK(r.range.lo <= 0.05);
  CHECK(r.range.hi >= 0.95);

  const auto ex1 = lookup_fixture("example1");
  auto r1 = range_estimate(ex1.set, ex1.bounded.polys()[0], ex1.box, 2000, 2);
  CHECK(r1.range.lo >= 1.0 - 1e-12);
  CHECK(r1.range.hi <= 2.0 + 1e-12);

  CHECK_THROWS_AS(range_estimate(SemiAlgebraicSet(2, {c(2, -1.0)}), x(2, 0), box, 5, 0), EstimationError);
}

TEST_CASE("fiber problems") {
  const BoundedPolySpec h0({x(1, 0)}, {{-1.0, 1.0}});
  auto fp = fiber_problem(SemiAlgebraicSet(1), h0, Point{0.0});
  REQUIRE(fp.augmented.generators().size() == 2);
  CHECK(fp.augmented.generators()[0] == x(1, 0));
  CHECK(fp.augmented.generators()[1] == -x(1, 0));

  const auto ex1 = lookup_fixture("example1");
  auto f1 = fiber_problem(ex1.set, ex1.bounded, Point{1.5});
  const auto& g1 = f1.augmented.generators();
  REQUIRE(g1.size() == 4);
  const auto shifted = ex1.bounded.polys()[0] - c(2, 1.5);
  CHECK(g1[2] == shifted);
  CHECK(g1[3] == -shifted);
  CHECK_THROWS_AS(fiber_problem(ex1.set, ex1.bounded, Point{2.5}), DomainError);
  CHECK_NOTHROW(fiber_problem(ex1.set, ex1.bounded, Point{2.0 + 1e-10}));
  CHECK_THROWS_AS(fiber_problem(ex1.set, ex1.bounded, Point{1.5, 1.0}), ArgumentError);

  const auto ex2 = lookup_fixture("example2");
  const auto& f = ex2.set.generators();
  auto f2 = fiber_problem(ex2.set, ex2.bounded, Point{0.3, 0.6});
  const auto& g2 = f2.augmented.generators();
  REQUIRE(g2.size() == 8);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(g2[i] == f[i]);
}

TEST_CASE("example2 fibers with nonzero lambda are single points") {
  const auto ex2 = lookup_fixture("example2");
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
  for (int t = 0; t < 100; ++t) {
    const Point lambda{u(rng), u(rng)};
    const auto fp = fiber_problem(ex2.set, ex2.bounded, lambda);
    const Point exact{lambda[1], lambda[0] / lambda[1]};
    CHECK(membership(fp.augmented, exact));
    for (int k = 0; k < 20; ++k) {
      const Point y{exact[0] + jitter(rng), exact[1] + jitter(rng)};
      if (membership(fp.augmented, y)) CHECK(std::hypot(y[0] - exact[0], y[1] - exact[1]) <= 1e-6);
    }
  }
}

TEST_CASE("catalog") {
  CHECK(lookup_fixture("example2").set.generators().size() == 4);
  CHECK(lookup_fixture("example3").set.generators().size() == 4);
  const auto hl = lookup_fixture("halfline");
  REQUIRE(hl.set.generators().size() == 1);
  CHECK(hl.set.generators()[0] == x(1, 0).pow(3));
  CHECK(membership(hl.set, Point{0.0}));
  CHECK_FALSE(membership(hl.set, Point{-0.01}));

  const auto e1 = lookup_fixture("example1(0.5,3,1)");
  CHECK(e1.bounded.ranges()[0].lo == 0.5);
  CHECK(e1.bounded.ranges()[0].hi == 3.0);
  CHECK(e1.bounded.polys()[0].eval(Point{2.0, 1.0}) == 1.0);

  CHECK(lookup_fixture("cylinder").set.dim() == 3);
  CHECK(lookup_fixture("cylinder(disk)").set.dim() == 3);
  CHECK(to_string(lookup_fixture("cylinder").classify(Point{0.1, 0.2}).cls) == std::string("line"));
  CHECK(fiber_class_from_string("subset-of-line") == FiberClass::subset_of_line);

  CHECK_THROWS_AS(lookup_fixture("example9"), LookupError);
  CHECK_THROWS_AS(lookup_fixture("example1(2,1,0)"), LookupError);
  CHECK(catalog_names().size() == catalog().size());
}

TEST_CASE("example4a curve samples have bounded h") {
  const auto fx = lookup_fixture("example4a");
  const auto s = sample_fixture(fx, 2000, 5);
  REQUIRE(s.points.size() == 2000);
  for (const auto& p : s.points) {
    const double h = p[0] + p[1];
    CHECK(std::abs(p[0] * p[0] * p[0] + p[1] * p[1] * p[1] - 1.0) <= 1e-12);
    CHECK(std::abs(h) <= 4.0);
    CHECK(fx.bounded.ranges()[0].contains(h, 1e-9));
  }
}
