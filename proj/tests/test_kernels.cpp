#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "semimoment/kernels.hpp"
#include "semimoment/moment.hpp"

using namespace semimoment;

TEST_CASE("atom moments: parallel matches serial bit for bit") {
  std::mt19937_64 rng(21);
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const auto fx = lookup_fixture(name);
    const auto mu = oracle::random_measure(fx, rng, 40);
    const auto basis = mono_basis(fx.set.dim(), 8);
    const auto s = kernels::serial::atom_moments(basis, mu.points(), mu.weights());
    const auto p = kernels::parallel::atom_moments(basis, mu.points(), mu.weights());
    CHECK(s == p);
    for (std::size_t k = 0; k < basis.size(); k += 7) {
      const double want = oracle::brute_moment(mu, basis[k].exponents());
      double scale = 0.0;
      for (std::size_t i = 0; i < mu.size(); ++i)
        scale += mu.weights()[i] * std::abs(oracle::monomial_value(basis[k].exponents(), mu.points()[i]));
      CHECK(std::abs(s[k] - want) <= 1e-13 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("localizing entries: parallel matches serial bit for bit") {
  std::mt19937_64 rng(22);
  const auto fx = lookup_fixture("example3");
  for (int t = 0; t < 10; ++t) {
    const auto mu = oracle::random_measure(fx, rng, 20);
    const auto L = functional_from_measure(mu, 10);
    const auto g = oracle::random_poly(rng, 2, 3);
    const auto rows = mono_basis(2, 3);
    Eigen::MatrixXd es, ms, ep, mp;
    kernels::serial::localizing_entries(L, rows, g, es, ms);
    kernels::parallel::localizing_entries(L, rows, g, ep, mp);
    CHECK(es == ep);
    CHECK(ms == mp);
    CHECK(es == es.transpose());
    CHECK((ms.array() >= 0.0).all());
  }
  CHECK(kernels::max_threads() >= 1);
}
