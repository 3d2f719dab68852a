#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "semimoment/errors.hpp"
#include "semimoment/linalg.hpp"
#include "semimoment/univariate.hpp"

using namespace semimoment;

namespace {

const Polynomial t = Polynomial::variable(1, 0);

AtomicMeasure atoms1(std::vector<double> pts, std::vector<double> w) {
  std::vector<Point> p;
  for (double v : pts) p.push_back(Point{v});
  return AtomicMeasure(std::move(p), std::move(w));
}

// Moments by direct power sums, independent of measure_moments.
std::vector<double> power_sums(const std::vector<double>& pts, const std::vector<double>& w, std::size_t len) {
  std::vector<double> m(len, 0.0);
  for (std::size_t k = 0; k < len; ++k)
    for (std::size_t i = 0; i < pts.size(); ++i) m[k] += w[i] * std::pow(pts[i], static_cast<double>(k));
  return m;
}

struct Sorted {
  std::vector<double> pts, w;
};

Sorted sorted(const AtomicMeasure& mu) {
  std::vector<std::size_t> idx(mu.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return mu.points()[a][0] < mu.points()[b][0]; });
  Sorted s;
  for (auto i : idx) {
    s.pts.push_back(mu.points()[i][0]);
    s.w.push_back(mu.weights()[i]);
  }
  return s;
}

}  // namespace

TEST_CASE("hankel minimum eigenvalues") {
  CHECK(hankel_min_eig(MomentVector1D({1.0, 0.0, 1.0})) == doctest::Approx(1.0));
  CHECK(hankel_min_eig(MomentVector1D({1.0, 0.0, -1.0})) == doctest::Approx(-1.0));
  CHECK(hankel_min_eig(MomentVector1D({2.0})) == 2.0);
  CHECK_THROWS_AS(MomentVector1D({1.0, 0.0}), ArgumentError);
  CHECK_THROWS_AS(MomentVector1D(std::vector<double>{}), ArgumentError);

  const MomentVector1D ones(std::vector<double>(7, 1.0));
  const auto lx = localized_hankel_matrix(ones, t);
  CHECK(lx.entries.rows() == 3);
  CHECK(std::abs(localized_hankel_min_eig(ones, t)) <= 1e-14);

  const MomentVector1D neg({1.0, -1.0, 1.0});
  const auto ln = localized_hankel_matrix(neg, t);
  CHECK(ln.entries.rows() == 1);
  CHECK(localized_hankel_min_eig(neg, t) == -1.0);

  CHECK_THROWS_AS(localized_hankel_matrix(neg, t.pow(3)), DegreeError);
  CHECK_THROWS_AS(localized_hankel_matrix(neg, Polynomial::variable(2, 0)), ArgumentError);

  // entries sum_c g_c m_{i+j+c}
  const MomentVector1D m({1.0, 2.0, 5.0, 7.0, 11.0, 13.0, 17.0});
  const auto g = t.pow(2) - 2.0 * t + Polynomial::constant(1, 3.0);
  const auto h = localized_hankel_matrix(m, g);
  REQUIRE(h.entries.rows() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(h.entries(i, j) == m[i + j + 2] - 2.0 * m[i + j + 1] + 3.0 * m[i + j]);
}

TEST_CASE("quadrature examples") {
  const auto pm = quadrature_atoms(MomentVector1D({1.0, 0.0, 1.0, 0.0, 1.0}));
  REQUIRE(pm.measure.size() == 2);
  const auto s = sorted(pm.measure);
  CHECK(s.pts[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(s.pts[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.w[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.w[1] == doctest::Approx(0.5).epsilon(1e-12));
  // eigenvalues of the Jacobi matrix [[0, 1], [1, 0]]
  const auto jev = oracle::jacobi_eigenvalues({{0.0, 1.0}, {1.0, 0.0}});
  CHECK(s.pts[0] == doctest::Approx(jev[0]));
  CHECK(s.pts[1] == doctest::Approx(jev[1]));

  const auto three = quadrature_atoms(MomentVector1D({1.0, 3.0, 9.0, 27.0, 81.0}));
  REQUIRE(three.measure.size() == 1);
  CHECK(three.measure.points()[0][0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(three.measure.weights()[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(three.rank == 1);
  CHECK(three.rank_deficient);

  const auto two = quadrature_atoms(MomentVector1D(power_sums({0.0, 2.0}, {0.25, 0.75}, 7)));
  REQUIRE(two.measure.size() == 2);
  const auto s2 = sorted(two.measure);
  CHECK(std::abs(s2.pts[0] - 0.0) <= 1e-8);
  CHECK(std::abs(s2.pts[1] - 2.0) <= 1e-8);
  CHECK(std::abs(s2.w[0] - 0.25) <= 1e-8);
  CHECK(std::abs(s2.w[1] - 0.75) <= 1e-8);
  CHECK(two.mismatch <= 1e-8);

  CHECK_THROWS_AS(quadrature_atoms(MomentVector1D({1.0, 0.0, -1.0})), InfeasibleError);
  CHECK_THROWS_AS(quadrature_atoms(MomentVector1D({-1.0, 0.0, 1.0})), InfeasibleError);
  try {
    quadrature_atoms(MomentVector1D({1.0, 0.0, -1.0}));
  } catch (const InfeasibleError& e) {
    CHECK(std::string(e.what()).find("indefinite Hankel") != std::string::npos);
  }
}

TEST_CASE("full-rank Hankel gives n + 1 atoms reproducing every moment") {
  // moments of a three-atom measure truncated at degree 2: Hankel 2x2 full rank
  const MomentVector1D m(power_sums({-1.0, 0.5, 2.0}, {0.3, 0.3, 0.4}, 3));
  const auto q = quadrature_atoms(m);
  CHECK(q.rank == 2);
  CHECK_FALSE(q.rank_deficient);
  CHECK(q.matched_degree == 2);
  CHECK(q.mismatch <= 1e-12);
}

TEST_CASE("quadrature round trip on random measures") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> pos(-3.0, 3.0), wt(0.1, 1.0);
  std::uniform_int_distribution<int> count(1, 6);
  for (int rep = 0; rep < 300; ++rep) {
    const int r = count(rng);
    std::vector<double> pts;
    // distinct atoms, at least 0.2 apart
    while (static_cast<int>(pts.size()) < r) {
      const double v = pos(rng);
      if (std::all_of(pts.begin(), pts.end(), [&](double p) { return std::abs(p - v) >= 0.2; })) pts.push_back(v);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> w(pts.size());
    for (auto& v : w) v = wt(rng);
    const MomentVector1D m(power_sums(pts, w, 2 * static_cast<std::size_t>(r) + 1));
    const auto q = quadrature_atoms(m);
    CAPTURE(rep);
    REQUIRE(q.measure.size() == pts.size());
    const auto s = sorted(q.measure);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(std::abs(s.pts[i] - pts[i]) <= 1e-8);
      CHECK(std::abs(s.w[i] - w[i]) <= 1e-8);
    }
    CHECK(q.mismatch <= 1e-8);
    CHECK(moment_mismatch(q.measure, m) <= 1e-8);
  }
}

TEST_CASE("no spurious infeasibility on strictly positive Hankels") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> pos(-2.0, 2.0), wt(0.1, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> pts(8), w(8);
    for (auto& v : pts) v = pos(rng);
    for (auto& v : w) v = wt(rng);
    const MomentVector1D m(power_sums(pts, w, 7));
    if (hankel_min_eig(m) >= kDefaultRankTol * linalg::magnitude_scale(hankel_matrix(m).magnitude)) CHECK_NOTHROW(quadrature_atoms(m));
  }
}

TEST_CASE("measure moments and mismatch") {
  const auto mu = atoms1({2.0, -1.0}, {0.5, 1.5});
  const auto m = measure_moments(mu, 2);
  CHECK(m.values() == power_sums({2.0, -1.0}, {0.5, 1.5}, 5));
  CHECK(moment_mismatch(mu, m) == 0.0);
  CHECK_THROWS_AS(measure_moments(AtomicMeasure({{1.0, 2.0}}, {1.0}), 1), ArgumentError);
}

TEST_CASE("Stieltjes split on the half line") {
  std::mt19937_64 rng(43);
  const auto hl = lookup_fixture("halfline");
  for (int rep = 0; rep < 100; ++rep) {
    const auto mu = oracle::random_measure(hl, rng, 8);
    const auto m = measure_moments(mu, 4);
    const double sc = std::max(1.0, *std::max_element(m.values().begin(), m.values().end()));
    CHECK(hankel_min_eig(m) >= -1e-10 * sc);
    CHECK(localized_hankel_min_eig(m, t) >= -1e-10 * sc);
    CHECK(localized_hankel_min_eig(m, t.pow(3)) >= -1e-10 * sc);
  }
}

TEST_CASE("line restriction") {
  const AtomicMeasure axis({{1.0, 0.0}, {-0.5, 0.0}, {2.0, 0.0}}, {0.2, 0.3, 0.5});
  const auto L = functional_from_measure(axis, 6);
  const Point a{0.0, 0.0}, e1{1.0, 0.0};
  const auto m = line_restriction(L, a, e1);
  REQUIRE(m.size() == 7);
  for (unsigned k = 0; k < 7; ++k) CHECK(m[k] == L.moment(Monomial({k, 0})));

  const auto origin = functional_from_measure(AtomicMeasure({{0.0, 0.0, 0.0}}, {1.0}), 4);
  const auto m0 = line_restriction(origin, Point{0.0, 0.0, 0.0}, Point{0.0, 0.0, 1.0});
  CHECK(m0.values() == std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0});

  const auto diag = functional_from_measure(AtomicMeasure({{2.0, 2.0}}, {1.0}), 6);
  const auto md = line_restriction(diag, a, Point{1.0, 1.0});
  for (std::size_t k = 0; k < md.size(); ++k) CHECK(md[k] == doctest::Approx(std::pow(2.0, double(k))).epsilon(1e-14));

  CHECK_THROWS_AS(line_restriction(L, a, Point{0.0, 0.0}), ArgumentError);
  CHECK_THROWS_AS(line_restriction(L, Point{0.0}, Point{1.0}), ArgumentError);
}

TEST_CASE("line restriction commutes with functional application") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto fx = lookup_fixture("cylinder");
  for (int rep = 0; rep < 30; ++rep) {
    const auto L = functional_from_measure(oracle::random_measure(fx, rng, 10), 6);
    const Point a{u(rng), u(rng), u(rng)}, v{u(rng), u(rng), 1.0 + u(rng) * u(rng)};
    const auto m = line_restriction(L, a, v);
    const std::vector<Polynomial> subs{line_coordinate(a, v)};
    for (unsigned k = 0; k < m.size(); ++k) CHECK(L.apply(compose(t.pow(k), subs)) == m[k]);
  }
}
