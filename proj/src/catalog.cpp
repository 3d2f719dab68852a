#include <cmath>
#include <regex>

#include "semimoment/errors.hpp"
#include "semimoment/semialg.hpp"

namespace semimoment {

namespace {

Polynomial mono(std::vector<unsigned> e, double c = 1.0) { return Polynomial::monomial(Monomial(std::move(e)), c); }

Polynomial cnst(std::size_t d, double c) { return Polynomial::constant(d, c); }

FiberClassifier constant_class(FiberClass c) {
  return [c](std::span<const double>) { return FiberInfo{c, std::nullopt}; };
}

Fixture example1(double m, double M, double c) {
  if (!(c >= 0.0) || !(m > 0.0) || !(m <= M)) throw LookupError("example1 needs c >= 0 and 0 < m <= M");
  Polynomial h = (mono({1, 0}) - cnst(2, c)) * mono({0, 1});
  Fixture fx;
  fx.name = "example1(" + std::to_string(m) + "," + std::to_string(M) + "," + std::to_string(c) + ")";
  fx.description = "m <= (x1 - c) x2 <= M; h = (x1 - c) x2";
  fx.set = SemiAlgebraicSet(2, {h - cnst(2, m), cnst(2, M) - h});
  fx.bounded = BoundedPolySpec({h}, {{m, M}});
  fx.box = {{c + 0.5, c + 2.0}, {m / 2.0, 2.0 * M}};
  fx.fiber_summary = "other";  // hyperbola (x1 - c) x2 = lambda
  fx.classify = constant_class(FiberClass::other);
  return fx;
}

Fixture example2() {
  Polynomial x1x2 = mono({1, 1});
  Polynomial x1 = mono({1, 0});
  Fixture fx;
  fx.name = "example2";
  fx.description = "f = (x1 x2, 1 - x1 x2, x1, 1 - x1); h = (x1 x2, x1)";
  fx.set = SemiAlgebraicSet(2, {x1x2, cnst(2, 1.0) - x1x2, x1, cnst(2, 1.0) - x1});
  fx.bounded = BoundedPolySpec({x1x2, x1}, {{0.0, 1.0}, {0.0, 1.0}});
  fx.box = {{0.0, 1.0}, {0.0, 4.0}};
  fx.fiber_summary = "point, or the x2-axis when x1 = 0";
  fx.classify = [](std::span<const double> lambda) {
    // x1 = lambda_2 pins the point (lambda_2, lambda_1 / lambda_2); x1 = 0 leaves the x2-axis.
    if (lambda[1] == 0.0) return FiberInfo{FiberClass::line, LineGeometry{{0.0, 0.0}, {0.0, 1.0}}};
    return FiberInfo{FiberClass::point, std::nullopt};
  };
  return fx;
}

Fixture example3() {
  Polynomial x1x2 = mono({1, 1});
  Polynomial x1 = mono({1, 0});
  Fixture fx;
  fx.name = "example3";
  fx.description = "f = (x1 x2 - 1, 2 - x1 x2, x1, 1 - x1); h = (x1 x2, x1)";
  fx.set = SemiAlgebraicSet(2, {x1x2 - cnst(2, 1.0), cnst(2, 2.0) - x1x2, x1, cnst(2, 1.0) - x1});
  fx.bounded = BoundedPolySpec({x1x2, x1}, {{1.0, 2.0}, {0.0, 1.0}});
  fx.box = {{0.5, 1.0}, {1.0, 4.0}};
  fx.fiber_summary = "point";
  fx.classify = constant_class(FiberClass::point);
  return fx;
}

Fixture example4a() {
  Polynomial g = mono({3, 0}) + mono({0, 3}) - cnst(2, 1.0);
  Fixture fx;
  fx.name = "example4a";
  fx.description = "curve x1^3 + x2^3 = 1; h = x1 + x2";
  fx.set = SemiAlgebraicSet(2, {g, -g});
  fx.bounded = BoundedPolySpec({mono({1, 0}) + mono({0, 1})}, {{0.0, std::cbrt(4.0)}});
  fx.box = {{-2.0, 2.0}, {-2.1, 2.1}};
  fx.fiber_summary = "compact";
  fx.classify = constant_class(FiberClass::compact);
  fx.draw = [](std::mt19937_64& rng) {
    double x1 = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
    return Point{x1, std::cbrt(1.0 - x1 * x1 * x1)};
  };
  return fx;
}

Fixture example4b() {
  // x2^2 (1 - x1) - x1^3
  Polynomial g = mono({0, 2}) - mono({1, 2}) - mono({3, 0});
  Fixture fx;
  fx.name = "example4b";
  fx.description = "curve x2^2 (1 - x1) = x1^3; h = x1";
  fx.set = SemiAlgebraicSet(2, {g, -g});
  fx.bounded = BoundedPolySpec({mono({1, 0})}, {{0.0, 1.0}});
  fx.box = {{0.0, 0.9}, {-2.7, 2.7}};
  fx.fiber_summary = "compact";
  fx.classify = constant_class(FiberClass::compact);
  fx.draw = [](std::mt19937_64& rng) {
    double x1 = std::uniform_real_distribution<double>(0.0, 0.9)(rng);
    double sign = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
    return Point{x1, sign * std::sqrt(x1 * x1 * x1 / (1.0 - x1))};
  };
  return fx;
}

Fixture halfline() {
  Fixture fx;
  fx.name = "halfline";
  fx.description = "d = 1, f = (x^3), K = [0, inf); no bounded h";
  fx.set = SemiAlgebraicSet(1, {mono({3})});
  fx.bounded = BoundedPolySpec{};
  fx.box = {{-1.0, 3.0}};
  fx.fiber_summary = "subset-of-line";
  fx.classify = [](std::span<const double>) {
    return FiberInfo{FiberClass::subset_of_line, LineGeometry{{0.0}, {1.0}}};
  };
  return fx;
}

Fixture cylinder_disk() {
  Fixture fx;
  fx.name = "cylinder(disk)";
  fx.description = "unit disk x R in R^3; h = (x1, x2)";
  fx.set = SemiAlgebraicSet(3, {cnst(3, 1.0) - mono({2, 0, 0}) - mono({0, 2, 0})});
  fx.bounded = BoundedPolySpec({mono({1, 0, 0}), mono({0, 1, 0})}, {{-1.0, 1.0}, {-1.0, 1.0}});
  fx.box = {{-1.0, 1.0}, {-1.0, 1.0}, {-2.0, 2.0}};
  fx.fiber_summary = "line";
  fx.classify = [](std::span<const double> lambda) {
    return FiberInfo{FiberClass::line, LineGeometry{{lambda[0], lambda[1], 0.0}, {0.0, 0.0, 1.0}}};
  };
  return fx;
}

Fixture cylinder_interval() {
  Fixture fx;
  fx.name = "cylinder(interval)";
  fx.description = "[0, 1] x R in R^2; h = x1";
  fx.set = SemiAlgebraicSet(2, {mono({1, 0}), cnst(2, 1.0) - mono({1, 0})});
  fx.bounded = BoundedPolySpec({mono({1, 0})}, {{0.0, 1.0}});
  fx.box = {{0.0, 1.0}, {-2.0, 2.0}};
  fx.fiber_summary = "line";
  fx.classify = [](std::span<const double> lambda) {
    return FiberInfo{FiberClass::line, LineGeometry{{lambda[0], 0.0}, {0.0, 1.0}}};
  };
  return fx;
}

}  // namespace

const char* to_string(FiberClass c) {
  switch (c) {
    case FiberClass::compact: return "compact";
    case FiberClass::line: return "line";
    case FiberClass::subset_of_line: return "subset-of-line";
    case FiberClass::point: return "point";
    case FiberClass::other: return "other";
  }
  return "other";
}

FiberClass fiber_class_from_string(const std::string& s) {
  for (auto c : {FiberClass::compact, FiberClass::line, FiberClass::subset_of_line, FiberClass::point,
                 FiberClass::other})
    if (s == to_string(c)) return c;
  throw LookupError("unknown fiber class '" + s + "'");
}

Fixture lookup_fixture(const std::string& name) {
  if (name == "example1") return example1(1.0, 2.0, 0.0);
  if (name == "example2") return example2();
  if (name == "example3") return example3();
  if (name == "example4a") return example4a();
  if (name == "example4b") return example4b();
  if (name == "halfline") return halfline();
  if (name == "cylinder" || name == "cylinder(disk)") return cylinder_disk();
  if (name == "cylinder(interval)") return cylinder_interval();

  static const std::regex ex1(R"(example1\(\s*([^,\s]+)\s*,\s*([^,\s]+)\s*,\s*([^,\s\)]+)\s*\))");
  std::smatch match;
  if (std::regex_match(name, match, ex1)) {
    try {
      return example1(std::stod(match[1]), std::stod(match[2]), std::stod(match[3]));
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
  }
  throw LookupError("unknown catalog fixture '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"example1", "example2", "example3", "example4a", "example4b", "halfline", "cylinder", "cylinder(interval)"};
}

std::map<std::string, Fixture> catalog() {
  std::map<std::string, Fixture> out;
  for (const auto& n : catalog_names()) out.emplace(n, lookup_fixture(n));
  return out;
}

}  // namespace semimoment
