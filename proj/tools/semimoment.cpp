// semimoment: command-line front end.
//
// Exit codes: 0 every check passed, 1 a check failed, 2 usage or input error,
// 3 numeric non-convergence. Reports go to stdout as JSON, diagnostics to stderr.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "semimoment/counterexample.hpp"
#include "semimoment/errors.hpp"
#include "semimoment/fiber.hpp"
#include "semimoment/json_io.hpp"
#include "semimoment/semialg.hpp"

namespace sm = semimoment;
using sm::io::Json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kNonConvergence = 3;

int emit(const Json& j, bool pass) {
  std::cout << j.dump(2) << '\n';
  return pass ? kPass : kFail;
}

// A catalog name, or a JSON file holding a set.
struct SetSource {
  sm::SemiAlgebraicSet set;
  std::optional<sm::Fixture> fixture;
};

SetSource load_set(const std::string& arg) {
  if (std::filesystem::exists(arg)) return {sm::io::set_from_json(sm::io::read_file(arg)), std::nullopt};
  auto fx = sm::lookup_fixture(arg);
  return {fx.set, fx};
}

struct CheckArgs {
  std::string functional;
  std::string set;
  unsigned level = 3;
  double tol = sm::kDefaultPsdTol;
};

int cmd_check(const CheckArgs& a) {
  const auto L = sm::io::functional_from_json(sm::io::read_file(a.functional));
  const auto src = load_set(a.set);
  const auto rep = sm::check_preorder_positivity(L, src.set, a.level, a.tol);
  return emit(sm::io::to_json(rep), rep.pass);
}

struct QuadratureArgs {
  std::string moments;
  double rank_tol = sm::kDefaultRankTol;
  double match_tol = sm::kLineMomentMatchTol;
};

int cmd_quadrature(const QuadratureArgs& a) {
  const auto m = sm::io::moments_from_json(sm::io::read_file(a.moments));
  try {
    const auto q = sm::quadrature_atoms(m, a.rank_tol);
    Json j = sm::io::to_json(q);
    const bool pass = q.mismatch <= a.match_tol;
    j["pass"] = pass;
    return emit(j, pass);
  } catch (const sm::InfeasibleError& e) {
    return emit(Json{{"pass", false}, {"error", e.what()}}, false);
  }
}

struct FiberArgs {
  std::string measure;
  std::string set;
  std::string h;
  unsigned degree = 3;
  double tol = sm::kDefaultPsdTol;
};

int cmd_fiber(const FiberArgs& a) {
  const auto mu = sm::io::measure_from_json(sm::io::read_file(a.measure));
  const auto src = load_set(a.set);
  sm::BoundedPolySpec h;
  sm::FiberClassifier classify;
  if (!a.h.empty()) {
    h = sm::io::bounded_from_json(sm::io::read_file(a.h));
  } else if (src.fixture && src.fixture->bounded.size() > 0) {
    h = src.fixture->bounded;
    classify = src.fixture->classify;
  } else {
    throw sm::ArgumentError("fiber: no h given and the set has no catalog h");
  }
  const auto rep = sm::theorem1_pipeline(src.set, h, mu, a.degree, a.tol, classify);
  return emit(sm::io::to_json(rep), rep.pass);
}

struct CounterexampleArgs {
  unsigned n = 3;
  double delta = 0.1;
  unsigned t = 2;
  double tol = 1e-7;
  std::size_t max_iter = sm::SeedSpec{}.max_iter;
};

int cmd_counterexample(const CounterexampleArgs& a) {
  if (6 * a.t > 4 * a.n)
    throw sm::DegreeError("counterexample: M_t(L2) needs 6t <= 4n (t = " + std::to_string(a.t) +
                          ", n = " + std::to_string(a.n) + ")");
  sm::SeedSpec spec;
  spec.n = a.n;
  spec.delta = a.delta;
  spec.tol = a.tol;
  spec.max_iter = a.max_iter;
  const auto seed = sm::find_seed(spec);
  const auto even = sm::lift_even(seed);
  try {
    const auto cert = sm::verify({seed, even, sm::lift_curve(even)}, a.t, a.tol);
    Json j = sm::io::to_json(cert);
    j["delta"] = a.delta;
    j["pass"] = true;
    return emit(j, true);
  } catch (const sm::VerificationError& e) {
    return emit(Json{{"pass", false}, {"leg", e.leg}, {"error", e.what()}, {"seed", seed.values()}}, false);
  }
}

int cmd_catalog(const std::string& name) {
  if (name.empty()) return emit(Json{{"fixtures", sm::catalog_names()}}, true);
  return emit(sm::io::to_json(sm::lookup_fixture(name)), true);
}

struct SampleArgs {
  std::string fixture;
  std::size_t count = 20;
  std::uint64_t seed = 0;
};

int cmd_sample(const SampleArgs& a) {
  const auto fx = sm::lookup_fixture(a.fixture);
  const auto s = sm::sample_fixture(fx, a.count, a.seed);
  if (s.points.empty()) throw sm::EstimationError("sample: no point of " + a.fixture + " found");
  std::vector<double> w(s.points.size(), 1.0 / static_cast<double>(s.points.size()));
  Json j = sm::io::to_json(sm::AtomicMeasure(s.points, std::move(w)));
  j["draws"] = s.draws;
  j["low_acceptance"] = s.low_acceptance;
  return emit(j, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated moment problems on semi-algebraic sets"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Preorder positivity of a functional on a set");
  c->add_option("functional", check.functional, "functional JSON file")->required();
  c->add_option("set", check.set, "catalog name or set JSON file")->required();
  c->add_option("--level", check.level, "basis degree n")->capture_default_str();
  c->add_option("--tol", check.tol, "relative eigenvalue tolerance")->capture_default_str();

  QuadratureArgs quad;
  auto* q = app.add_subcommand("quadrature", "Atoms of a univariate moment vector");
  q->add_option("moments", quad.moments, "moments JSON file")->required();
  q->add_option("--rank-tol", quad.rank_tol, "relative pivot cutoff")->capture_default_str();
  q->add_option("--match-tol", quad.match_tol, "allowed relative moment mismatch")->capture_default_str();

  FiberArgs fib;
  auto* f = app.add_subcommand("fiber", "Fiber-by-fiber positivity and line solves");
  f->add_option("measure", fib.measure, "measure JSON file")->required();
  f->add_option("set", fib.set, "catalog name or set JSON file")->required();
  f->add_option("h-file", fib.h, "bounded polynomials JSON file (defaults to the catalog h)");
  f->add_option("--degree", fib.degree, "basis degree n")->capture_default_str();
  f->add_option("--tol", fib.tol, "relative eigenvalue tolerance")->capture_default_str();

  CounterexampleArgs ce;
  auto* x = app.add_subcommand("counterexample", "Positive but non-moment functional on the cusp curve");
  x->add_option("--n", ce.n, "seed degree 2n")->capture_default_str();
  x->add_option("--delta", ce.delta, "target -L(x)")->capture_default_str();
  x->add_option("--t", ce.t, "moment matrix level for L2")->capture_default_str();
  x->add_option("--tol", ce.tol, "eigenvalue tolerance")->capture_default_str();
  x->add_option("--max-iter", ce.max_iter, "projection iterations per scale")->capture_default_str();

  std::string fixture_name;
  auto* g = app.add_subcommand("catalog", "Print a fixture, or list them");
  g->add_option("name", fixture_name, "fixture name");

  SampleArgs samp;
  auto* s = app.add_subcommand("sample", "Seeded atomic measure on a fixture, equal weights");
  s->add_option("fixture", samp.fixture, "fixture name")->required();
  s->add_option("--count", samp.count, "number of atoms")->capture_default_str();
  s->add_option("--seed", samp.seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*c) return cmd_check(check);
    if (*q) return cmd_quadrature(quad);
    if (*f) return cmd_fiber(fib);
    if (*x) return cmd_counterexample(ce);
    if (*g) return cmd_catalog(fixture_name);
    if (*s) return cmd_sample(samp);
  } catch (const sm::NonConvergenceError& e) {
    std::cerr << "semimoment: " << e.what() << '\n';
    std::cout << Json{{"pass", false}, {"error", e.what()}, {"residual", e.residual}, {"best_iterate", e.best_iterate}}
                     .dump(2)
              << '\n';
    return kNonConvergence;
  } catch (const sm::Error& e) {
    std::cerr << "semimoment: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
