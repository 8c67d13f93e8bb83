// Serial-reference vs OpenMP timings for the data-parallel kernels:
// Stieltjes inversion over grid nodes, the log-kernel double integral,
// gamma'(1) on a grid, the Euler-Lagrange probe sweep, and sampler replicas.

#include <benchmark/benchmark.h>

#include <cmath>

#include "bel/booleanclt.hpp"
#include "bel/entropy.hpp"
#include "bel/laws.hpp"
#include "bel/measure.hpp"
#include "bel/transforms.hpp"
#include "bel/verify.hpp"

using namespace bel;

namespace {

Measure semicircle_grid(double dx) {
  const int half = static_cast<int>(std::lround(2.2 / dx));
  return make_law(LawSpec::semicircle(), {-dx * half, dx, 2 * half + 1});
}

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::Serial : Exec::OpenMP;
}

void BM_stieltjes_invert(benchmark::State& state) {
  const Measure sc = semicircle_grid(0.002);
  const auto g = [&sc](Complex z) { return cauchy_transform(sc, z); };
  for (auto _ : state) {
    const Measure back = stieltjes_invert(g, -3.0, 0.004, 1501, {0.1, 0.05, 0.025},
                                          exec_of(state));
    benchmark::DoNotOptimize(back.values().data());
  }
}
BENCHMARK(BM_stieltjes_invert)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_sigma_entropy(benchmark::State& state) {
  const Measure sc = semicircle_grid(0.001);
  for (auto _ : state) {
    double s = sigma_entropy(sc, exec_of(state));
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_sigma_entropy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_gamma_prime_1(benchmark::State& state) {
  Measure sc = semicircle_grid(0.002);
  sc = dilate(sc, 1.0 / std::sqrt(moment(sc, 2)));
  for (auto _ : state) {
    double v = gamma_prime_1(sc, exec_of(state));
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_gamma_prime_1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_euler_lagrange(benchmark::State& state) {
  const double g2 = p_alpha_edge_outer(0.5);
  const double dx = 5e-4;
  const int half = static_cast<int>(std::ceil((g2 + 0.05) / dx));
  const Measure p = make_law(LawSpec::p_alpha(0.5), {-dx * half, dx, 2 * half + 1});
  for (auto _ : state) {
    const auto r = euler_lagrange_residual(p, 0.5, exec_of(state));
    benchmark::DoNotOptimize(r.max_dev_on_support);
  }
}
BENCHMARK(BM_euler_lagrange)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_convergence_replicas(benchmark::State& state) {
  const EnsembleConfig cfg = WishartBlockConfig{20, 1000, 0};
  for (auto _ : state) {
    const auto s = convergence_stats(cfg, 8, 1, exec_of(state));
    benchmark::DoNotOptimize(s.mean_d_bl);
  }
}
BENCHMARK(BM_convergence_replicas)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
