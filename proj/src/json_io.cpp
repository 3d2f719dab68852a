#include "semimoment/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "semimoment/errors.hpp"

namespace semimoment::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw FormatError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

std::vector<unsigned> exponents(const Json& j) {
  if (!j.is_array()) throw FormatError("exps must be an array of nonnegative integers");
  std::vector<unsigned> out;
  for (const auto& v : j) out.push_back(static_cast<unsigned>(count(v, "exponent")));
  return out;
}

Json point(std::span<const double> x) { return Json(std::vector<double>(x.begin(), x.end())); }

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

// ---------------------------------------------------------------- polynomial

Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"exps", m.exponents()}, {"coef", c}});
  return {{"dim", p.dim()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const Json& j) {
  return guarded([&] {
    const std::size_t d = count(field(j, "dim"), "dim");
    if (d == 0) throw FormatError("polynomial dim must be >= 1");
    Polynomial p(d);
    const auto& terms = field(j, "terms");
    if (!terms.is_array()) throw FormatError("terms must be an array");
    for (const auto& t : terms) {
      auto e = exponents(field(t, "exps"));
      if (e.size() != d) throw FormatError("term exponent length differs from dim");
      p = p + Polynomial::monomial(Monomial(std::move(e)), number(field(t, "coef"), "coef"));
    }
    return p;
  });
}

// ----------------------------------------------------------------------- set

Json to_json(const SemiAlgebraicSet& K) {
  Json gens = Json::array();
  for (const auto& g : K.generators()) gens.push_back(to_json(g));
  return {{"dim", K.dim()}, {"generators", gens}};
}

SemiAlgebraicSet set_from_json(const Json& j) {
  return guarded([&] {
    const std::size_t d = count(field(j, "dim"), "dim");
    const auto& gens = field(j, "generators");
    if (!gens.is_array()) throw FormatError("generators must be an array");
    std::vector<Polynomial> out;
    for (const auto& g : gens) out.push_back(polynomial_from_json(g));
    return SemiAlgebraicSet(d, std::move(out));
  });
}

// ------------------------------------------------------------------- measure

Json to_json(const AtomicMeasure& mu) {
  Json pts = Json::array();
  for (const auto& x : mu.points()) pts.push_back(point(x));
  return {{"points", pts}, {"weights", mu.weights()}};
}

AtomicMeasure measure_from_json(const Json& j) {
  return guarded([&] {
    const auto& pts = field(j, "points");
    if (!pts.is_array()) throw FormatError("points must be an array of points");
    std::vector<Point> points;
    for (const auto& p : pts) points.push_back(numbers(p, "point"));
    return AtomicMeasure(std::move(points), numbers(field(j, "weights"), "weights"));
  });
}

// ---------------------------------------------------------------- functional

namespace {

std::string exponent_key(const Monomial& m) {
  std::string key;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (i) key += ',';
    key += std::to_string(m[i]);
  }
  return key;
}

Monomial monomial_from_key(const std::string& key, std::size_t d) {
  std::vector<unsigned> e;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    const std::size_t comma = std::min(key.find(',', pos), key.size());
    const std::string part = key.substr(pos, comma - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw FormatError("bad moment key '" + key + "'");
    e.push_back(static_cast<unsigned>(std::stoul(part)));
    pos = comma + 1;
  }
  if (e.size() != d) throw FormatError("moment key '" + key + "' has the wrong number of exponents");
  return Monomial(std::move(e));
}

}  // namespace

Json to_json(const MomentFunctional& L) {
  Json j = {{"dim", L.dim()}, {"max_degree", L.max_degree()}};
  if (!L.weights().empty()) j["weights"] = L.weights();
  Json moments = Json::object();
  for (std::size_t i = 0; i < L.basis().size(); ++i) moments[exponent_key(L.basis()[i])] = L.moments()[i];
  j["moments"] = moments;
  return j;
}

MomentFunctional functional_from_json(const Json& j) {
  return guarded([&] {
    if (j.is_object() && j.contains("measure")) {
      const auto degree = static_cast<unsigned>(count(field(j, "max_degree"), "max_degree"));
      return functional_from_measure(measure_from_json(j["measure"]), degree);
    }
    const std::size_t d = count(field(j, "dim"), "dim");
    const auto degree = static_cast<unsigned>(count(field(j, "max_degree"), "max_degree"));
    std::vector<unsigned> weights;
    if (j.contains("weights")) weights = exponents(j["weights"]);
    // Build the basis first so entries may come in any order.
    MomentFunctional shape(d, degree, std::vector<double>(weighted_basis(d, degree, weights).size(), 0.0), weights);
    std::vector<double> values(shape.basis().size(), std::nan(""));
    const auto& moments = field(j, "moments");
    if (!moments.is_object()) throw FormatError("moments must be an object keyed by exponents");
    for (const auto& [key, value] : moments.items()) {
      const Monomial mono = monomial_from_key(key, d);
      if (!shape.covers(mono)) throw FormatError("moment " + mono.to_string() + " lies outside the degree budget");
      values[shape.index_of(mono)] = number(value, "moment value");
    }
    for (std::size_t i = 0; i < values.size(); ++i)
      if (std::isnan(values[i])) throw FormatError("missing moment for " + shape.basis()[i].to_string());
    return MomentFunctional(d, degree, std::move(values), std::move(weights));
  });
}

Json to_json(const MomentVector1D& m) { return {{"moments", m.values()}}; }

MomentVector1D moments_from_json(const Json& j) {
  return guarded([&] {
    const Json& arr = j.is_array() ? j : field(j, "moments");
    return MomentVector1D(numbers(arr, "moments"));
  });
}

Json to_json(const BoundedPolySpec& h) {
  Json polys = Json::array(), ranges = Json::array();
  for (const auto& p : h.polys()) polys.push_back(to_json(p));
  for (const auto& r : h.ranges()) ranges.push_back({r.lo, r.hi});
  return {{"polys", polys}, {"ranges", ranges}};
}

BoundedPolySpec bounded_from_json(const Json& j) {
  return guarded([&] {
    const auto& polys = field(j, "polys");
    const auto& ranges = field(j, "ranges");
    if (!polys.is_array() || !ranges.is_array()) throw FormatError("polys and ranges must be arrays");
    std::vector<Polynomial> ps;
    std::vector<Interval> rs;
    for (const auto& p : polys) ps.push_back(polynomial_from_json(p));
    for (const auto& r : ranges) {
      auto v = numbers(r, "range");
      if (v.size() != 2) throw FormatError("each range is [lo, hi]");
      rs.push_back({v[0], v[1]});
    }
    return BoundedPolySpec(std::move(ps), std::move(rs));
  });
}

// ------------------------------------------------------------------- reports

Json to_json(const EigenCheck& c) {
  return {{"min_eig", c.min_eig}, {"max_eig", c.max_eig}, {"scale", c.scale}, {"pass", c.pass}};
}

Json to_json(const PositivityReport& r) {
  Json gens = Json::array();
  for (const auto& g : r.generators)
    gens.push_back({{"generator", g.generator.to_string()},
                    {"mask", g.mask},
                    {"degree", g.degree},
                    {"level", g.level},
                    {"size", g.size},
                    {"value", g.value},
                    {"eig", to_json(g.eig)}});
  return {{"level", r.level}, {"tol", r.tol}, {"pass", r.pass}, {"generators", gens}};
}

Json to_json(const QuadratureResult& q) {
  Json atoms = Json::array(), weights = Json::array();
  for (std::size_t i = 0; i < q.measure.size(); ++i) {
    atoms.push_back(q.measure.points()[i][0]);
    weights.push_back(q.measure.weights()[i]);
  }
  return {{"atoms", atoms},
          {"weights", weights},
          {"rank", q.rank},
          {"matched_degree", q.matched_degree},
          {"rank_deficient", q.rank_deficient},
          {"mismatch", q.mismatch}};
}

Json to_json(const Theorem1Report& r) {
  Json fibers = Json::array();
  for (const auto& f : r.fibers) {
    Json j = {{"lambda", f.lambda},
              {"mass", f.mass},
              {"atoms", f.atom_count},
              {"class", to_string(f.cls)},
              {"empty", f.empty},
              {"pass", f.pass}};
    if (!f.note.empty()) j["note"] = f.note;
    if (f.positivity) {
      double worst = 0.0;
      for (const auto& g : f.positivity->generators) worst = std::min(worst, g.eig.min_eig / g.eig.scale);
      j["report"] = {{"pass", f.positivity->pass},
                     {"generators", f.positivity->generators.size()},
                     {"worst_scaled_min_eig", worst}};
    }
    if (f.line_solve) {
      Json ls = {{"base", f.line_solve->line.base},
                 {"direction", f.line_solve->line.direction},
                 {"moments", f.line_solve->moments.values()},
                 {"pass", f.line_solve->pass}};
      if (f.line_solve->quadrature) ls["quadrature"] = to_json(*f.line_solve->quadrature);
      if (!f.line_solve->error.empty()) ls["error"] = f.line_solve->error;
      j["line_solve"] = ls;
    }
    fibers.push_back(j);
  }
  return {{"pass", r.pass}, {"base", to_json(r.base)}, {"fibers", fibers}};
}

Json to_json(const CounterexampleCertificate& c) {
  Json j;
  if (c.seed) j["seed"] = c.seed->values();
  if (c.even_lift) j["even_lift"] = c.even_lift->values();
  j["curve"] = to_json(c.curve);
  j["t"] = c.t;
  j["tol"] = c.tol;
  if (c.hankel) j["hankel"] = to_json(*c.hankel);
  if (c.localized) j["localized_hankel"] = to_json(*c.localized);
  j["moment_matrix"] = to_json(c.moment_matrix);
  j["annihilation"] = {{"values", c.annihilation_values}, {"square", c.annihilation_square}};
  j["curve_samples"] = {{"count", c.curve_samples}, {"min_x1", c.curve_min_x1}};
  Json legs = Json::array();
  for (const auto& l : c.legs)
    legs.push_back({{"name", l.name}, {"value", l.value}, {"threshold", l.threshold}, {"pass", l.pass}});
  j["legs"] = legs;
  j["witness"] = c.witness;
  j["is_counterexample"] = c.is_counterexample;
  j["note"] = c.note;
  return j;
}

Json to_json(const Fixture& fx) {
  Json box = Json::array();
  for (const auto& b : fx.box) box.push_back({b.lo, b.hi});
  return {{"name", fx.name},
          {"description", fx.description},
          {"set", to_json(fx.set)},
          {"generators", [&] {
             Json g = Json::array();
             for (const auto& p : fx.set.generators()) g.push_back(p.to_string());
             return g;
           }()},
          {"bounded", to_json(fx.bounded)},
          {"box", box},
          {"fiber_summary", fx.fiber_summary}};
}

}  // namespace semimoment::io
