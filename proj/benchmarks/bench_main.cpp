#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sll/limits.hpp"
#include "sll/solver.hpp"

using namespace sll;

static void BM_SpeedFromMassFlux(benchmark::State& state) {
  double j = 0.0;
  for (auto _ : state) {
    j = j > 0.36 ? 0.0 : j + 1e-4;
    benchmark::DoNotOptimize(thermo::speed_from_mass_flux(j, 1.0, 1.0, 1.4));
  }
}
BENCHMARK(BM_SpeedFromMassFlux);

static void BM_HomentropicDensity(benchmark::State& state) {
  const auto law = thermo::PressureLaw::isothermal(1.0);
  double q = 0.0;
  for (auto _ : state) {
    q = q > 0.9 ? 0.0 : q + 1e-4;
    benchmark::DoNotOptimize(thermo::density_from_bernoulli_hom(law, q, 0.5));
  }
}
BENCHMARK(BM_HomentropicDensity);

static void BM_EllipticSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = build_grid(Nozzle::tanh_contraction(GeometryKind::Planar, 0.3, 0.0, 1.0), 2 * n, n, -4.0, 4.0);
  std::vector<double> rho(g.size()), w(g.size()), inlet(g.nsig());
  for (std::size_t k = 0; k < g.size(); ++k) {
    rho[k] = 1.0 + 0.1 * g.layout().y[k];
    w[k] = std::sin(3.0 * g.layout().y[k]);
  }
  for (std::size_t j = 0; j < g.nsig(); ++j) inlet[j] = 0.3 * g.sigma(j);
  for (auto _ : state) benchmark::DoNotOptimize(elliptic_solve(g, rho, w, 0.3, inlet));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(g.size()));
}
BENCHMARK(BM_EllipticSolve)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_PicardContraction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = build_grid(Nozzle::tanh_contraction(GeometryKind::Planar, 0.3, 0.0, 1.0), 2 * n, n, -8.0, 8.0);
  const UpstreamData up{Curve::polynomial({1.0, 0.0, 0.05}), Curve::polynomial({1.0, 0.0, -0.05})};
  const auto gas = thermo::GasModel::full_euler(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(picard_solve(g, up, gas, 0.3));
}
BENCHMARK(BM_PicardContraction)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_Diagnose(benchmark::State& state) {
  const auto g = build_grid(Nozzle::tanh_contraction(GeometryKind::Planar, 0.3, 0.0, 1.0), 64, 32, -8.0, 8.0);
  const auto gas = thermo::GasModel::full_euler(2.0);
  const auto sol = picard_solve(g, UpstreamData::uniform(1.0, 1.0), gas, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(diagnose(sol.flow, gas, &sol.flow));
}
BENCHMARK(BM_Diagnose)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
