#include <benchmark/benchmark.h>

#include <rvdp/rvdp.hpp>

using namespace rvdp;

namespace {

SystemParams driven_vdp() {
  return find_parameter_set("quantum-vdP-eps0.1")->params.with_drive(0.3).with_detuning(0.05);
}

}  // namespace

static void BM_StencilApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemParams p = driven_vdp();
  const Liouvillian gen(p, DriveModel::Rwa, Frame::rotating(p.drive_frequency), n);
  const CMatrix rho = coherent_state({0.5, 0.3}, n, 1.0).matrix();
  CMatrix out(n, n);
  double t = 0.0;
  for (auto _ : state) {
    gen.apply(t, rho.data(), out.data(), state.range(1) != 0);
    benchmark::DoNotOptimize(out.data());
    t += 1e-3;
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_StencilApply)->ArgsProduct({{8, 20, 40, 60}, {0, 1}});

static void BM_GenericRhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemParams p = driven_vdp();
  const CMatrix rho = coherent_state({0.5, 0.3}, n, 1.0).matrix();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rhs_generic(p, DriveModel::Rwa, Frame::laboratory(), 0.3, rho));
  }
}
BENCHMARK(BM_GenericRhs)->Arg(8)->Arg(20)->Arg(40);

static void BM_WignerGrid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CMatrix rho = coherent_state({1.0, 0.5}, n, 1.0).matrix();
  const auto axis = linspace(-5.0, 5.0, 101);
  for (auto _ : state) benchmark::DoNotOptimize(wigner(rho, axis, axis));
}
BENCHMARK(BM_WignerGrid)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_EvolveRvdp(benchmark::State& state) {
  const ParameterSet s = *find_parameter_set("quantum-RvdP-eps0.1");
  const SystemParams p = s.params.with_drive(0.3);
  EvolveOptions opt;
  opt.t_final = 50.0;
  opt.record_interval = 0.5;
  const DensityMatrix rho0 = coherent_state({0.75, 0.75}, s.default_dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        evolve(rho0, p, DriveModel::Rwa, Frame::rotating(p.drive_frequency), opt));
  }
}
BENCHMARK(BM_EvolveRvdp)->Unit(benchmark::kMillisecond);

static void BM_SteadyStateNullspace(benchmark::State& state) {
  const ParameterSet s = *find_parameter_set(state.range(0) ? "quantum-vdP-eps0.1"
                                                            : "quantum-R-eps0.1");
  SteadyStateOptions so;
  so.dim = s.default_dim;
  for (auto _ : state) {
    benchmark::DoNotOptimize(steady_state_undriven(s.params, Frame::laboratory(), so));
  }
}
BENCHMARK(BM_SteadyStateNullspace)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
