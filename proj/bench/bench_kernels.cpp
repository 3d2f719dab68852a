// Serial reference kernels against their OpenMP versions.
//
//   ./bench_kernels --benchmark_counters_tabular=true
// Set OMP_NUM_THREADS to vary the parallel side.

#include <benchmark/benchmark.h>

#include <random>

#include "semimoment/kernels.hpp"
#include "semimoment/moment.hpp"

namespace sm = semimoment;

namespace {

struct Data {
  std::vector<sm::Monomial> basis;
  std::vector<sm::Point> points;
  std::vector<double> weights;
};

Data make_data(std::size_t dim, unsigned degree, std::size_t atoms) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0), w(0.1, 1.0);
  Data d;
  d.basis = sm::mono_basis(dim, degree);
  for (std::size_t i = 0; i < atoms; ++i) {
    sm::Point p(dim);
    for (auto& v : p) v = u(rng);
    d.points.push_back(std::move(p));
    d.weights.push_back(w(rng));
  }
  return d;
}

template <bool Parallel>
void atom_moments(benchmark::State& state) {
  const auto d = make_data(3, static_cast<unsigned>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto m = Parallel ? sm::kernels::parallel::atom_moments(d.basis, d.points, d.weights)
                      : sm::kernels::serial::atom_moments(d.basis, d.points, d.weights);
    benchmark::DoNotOptimize(m.data());
  }
  state.counters["moments"] = static_cast<double>(d.basis.size());
  state.counters["threads"] = Parallel ? sm::kernels::max_threads() : 1;
}

template <bool Parallel>
void localizing(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const auto d = make_data(3, 2 * n + 2, 200);
  const sm::AtomicMeasure mu(d.points, d.weights);
  const auto L = sm::functional_from_measure(mu, 2 * n + 2);
  const auto g = sm::Polynomial::constant(3, 1.0) - sm::Polynomial::variable(3, 0).pow(2) -
                 sm::Polynomial::variable(3, 1).pow(2);
  const auto rows = sm::mono_basis(3, n);
  Eigen::MatrixXd e, m;
  for (auto _ : state) {
    if constexpr (Parallel)
      sm::kernels::parallel::localizing_entries(L, rows, g, e, m);
    else
      sm::kernels::serial::localizing_entries(L, rows, g, e, m);
    benchmark::DoNotOptimize(e.data());
  }
  state.counters["size"] = static_cast<double>(rows.size());
  state.counters["threads"] = Parallel ? sm::kernels::max_threads() : 1;
}

}  // namespace

BENCHMARK(atom_moments<false>)->Args({6, 200})->Args({10, 1000})->Unit(benchmark::kMicrosecond);
BENCHMARK(atom_moments<true>)->Args({6, 200})->Args({10, 1000})->Unit(benchmark::kMicrosecond);
BENCHMARK(localizing<false>)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);
BENCHMARK(localizing<true>)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
