#include <benchmark/benchmark.h>

#include <random>

#include "nbodygeom/central.hpp"
#include "nbodygeom/invariants.hpp"
#include "nbodygeom/jacobi.hpp"
#include "nbodygeom/rootsys.hpp"
#include "nbodygeom/shape.hpp"

using namespace nbg;

namespace {

MassDistribution bench_masses(int n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.3, 2.5);
  std::vector<double> m(n);
  for (double& v : m) v = u(rng);
  return MassDistribution(std::move(m));
}

CenteredConfiguration bench_config(int n, int d) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd pos(d, n);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < n; ++c) pos(r, c) = gauss(rng);
  return center(Configuration(bench_masses(n), pos)).first;
}

void bm_forward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto masses = bench_masses(n);
  auto coeffs = standard_coefficients(masses);
  auto config = bench_config(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(forward(coeffs, config).columns);
}
BENCHMARK(bm_forward)->Arg(4)->Arg(8)->Arg(16);

void bm_invariants(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto config = bench_config(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(mass_weighted_invariants(config).values);
}
BENCHMARK(bm_invariants)->Arg(4)->Arg(8)->Arg(16);

void bm_canonical_form(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto config = bench_config(n, 3);
  auto x = forward(standard_coefficients(config.masses()), config).columns;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(x).r);
}
BENCHMARK(bm_canonical_form)->Arg(4)->Arg(8)->Arg(16);

void bm_spherical_descent(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto masses = bench_masses(n);
  auto roots = standard_roots(masses);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  ChamberSpec chamber{order};
  Eigen::VectorXd start = chamber_start(chamber, roots);
  for (auto _ : state) benchmark::DoNotOptimize(spherical_descent(start, roots).x);
}
BENCHMARK(bm_spherical_descent)->Arg(3)->Arg(4)->Arg(6);

void bm_moulton_all(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto masses = bench_masses(n);
  for (auto _ : state) benchmark::DoNotOptimize(moulton_solve_all(masses).size());
}
BENCHMARK(bm_moulton_all)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
