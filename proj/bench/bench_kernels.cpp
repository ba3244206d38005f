// Serial-versus-OpenMP timing of the data-parallel kernels.

#include <benchmark/benchmark.h>

#include "squeezemap/parallel.hpp"
#include "squeezemap/sensing.hpp"
#include "squeezemap/topology.hpp"

using namespace sqz;

namespace {

KagomeParams topo_point() {
  KagomeParams p;
  p.omega0 = 4.5;
  p.j = 1.0;
  p.nu = 0.8;
  return p;
}

void bm_chern(benchmark::State& state, bool parallel_on) {
  parallel::set_enabled(parallel_on);
  const BlochField field = kagome_field(topo_point());
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(chern_lr(field, 0, grid).value);
  }
  parallel::set_enabled(true);
}

void bm_strip(benchmark::State& state, bool parallel_on) {
  parallel::set_enabled(parallel_on);
  const RVec ks = RVec::LinSpaced(static_cast<int>(state.range(0)), 0.0, 6.2831853);
  for (auto _ : state) {
    benchmark::DoNotOptimize(strip_spectrum(topo_point(), 12, ks).energies.sum());
  }
  parallel::set_enabled(true);
}

void bm_scaling(benchmark::State& state, bool parallel_on) {
  parallel::set_enabled(parallel_on);
  RVec eps(64);
  for (Index i = 0; i < eps.size(); ++i)
    eps(i) = std::pow(10.0, -6.0 + 3.0 * i / (eps.size() - 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hoep_scaling_scan(1.0, eps).fitted_exponent);
  }
  parallel::set_enabled(true);
}

}  // namespace

BENCHMARK_CAPTURE(bm_chern, serial, false)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_chern, openmp, true)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_strip, serial, false)->Arg(31)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_strip, openmp, true)->Arg(31)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_scaling, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_scaling, openmp, true)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  parallel::configure_from_environment();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
