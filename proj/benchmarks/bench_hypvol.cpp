#include <complex>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hypvol/hypvol.hpp"

using namespace hypvol;

namespace {

struct Fig8 {
  Diagram diagram = parse_pd(fixtures::kFigureEightPd);
  HolonomyRep rho = load_holonomy(fixtures::figure_eight_holonomy(), diagram);
};

const Fig8& fig8() {
  static const Fig8 f;
  return f;
}

void BM_BlochWigner(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<Complex> zs(1024);
  for (auto& z : zs) z = {u(rng), u(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bloch_wigner(zs[i++ & 1023]));
  }
}
BENCHMARK(BM_BlochWigner);

void BM_CocycleVol(benchmark::State& state) {
  const auto& f = fig8();
  const auto pool = enumerate_conjugates(f.rho, 1);
  const auto w = f.rho.generator(0);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& z = pool[i % pool.size()];
    const auto& x = pool[(i / 3) % pool.size()];
    const auto& y = pool[(i / 7) % pool.size()];
    benchmark::DoNotOptimize(cocycle_vol(w, z, x, y));
    ++i;
  }
}
BENCHMARK(BM_CocycleVol);

void BM_EnumerateConjugates(benchmark::State& state) {
  const auto& f = fig8();
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_conjugates(f.rho, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_EnumerateConjugates)->DenseRange(1, 3);

void BM_Census(benchmark::State& state) {
  const auto& f = fig8();
  const auto w = f.rho.generator(0);
  for (auto _ : state) {
    const auto c = census_colorings(f.diagram, f.rho, w, fixtures::kFigureEightVolume,
                                    static_cast<int>(state.range(0)), 1'000'000);
    benchmark::DoNotOptimize(c.k_counts);
  }
}
BENCHMARK(BM_Census)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
