#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "irsim/analytics.hpp"
#include "irsim/fading.hpp"
#include "irsim/geometry.hpp"
#include "irsim/irs.hpp"
#include "irsim/montecarlo.hpp"
#include "irsim/rng.hpp"

namespace {

using namespace irsim;

void BM_PhiloxBlocks(benchmark::State& state) {
  philox::Counter ctr = {1, 2, 3, 4};
  const philox::Key key = {5, 6};
  for (auto _ : state) {
    ctr = philox::encrypt(ctr, key);
    benchmark::DoNotOptimize(ctr);
  }
  state.SetItemsProcessed(state.iterations());
  state.SetBytesProcessed(state.iterations() * 16);
}
BENCHMARK(BM_PhiloxBlocks);

void BM_NextCnormal(benchmark::State& state) {
  RngStream rng(1, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.next_cnormal(1.0));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NextCnormal);

void BM_FadingDraw(benchmark::State& state) {
  const LinkBudget budget{1.0, 0.5, 0.25, 0.125};
  const std::size_t n = std::size_t(state.range(0));
  RngStream rng(1, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_fading(budget, n, rng));
  }
  state.SetItemsProcessed(state.iterations() * (2 * n + 1));
}
BENCHMARK(BM_FadingDraw)->Arg(16)->Arg(64)->Arg(256);

void BM_EffectiveChannel(benchmark::State& state) {
  const LinkBudget budget{1.0, 0.5, 0.25, 0.125};
  const std::size_t n = std::size_t(state.range(0));
  RngStream rng(1, 4);
  const FadingDraw draw = sample_fading(budget, n, rng);
  const PhaseConfig phases = random_phases(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(effective_channel(draw, phases));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_EffectiveChannel)->Arg(16)->Arg(64)->Arg(256);

void BM_RoundRobinSlots(benchmark::State& state) {
  SimConfig cfg;
  cfg.k_ues = 10;
  cfg.q_ues = 10;
  cfg.n_elements = std::size_t(state.range(0));
  cfg.slots = 100;
  cfg.trials = 4;
  cfg.gamma_db_grid = {120.0, 130.0, 140.0};
  cfg.pathloss.c0_direct = 1e-6;
  resolve_ue_placement(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_round_robin(cfg, 1));
  }
  state.SetItemsProcessed(state.iterations() * cfg.slots * cfg.trials);
}
BENCHMARK(BM_RoundRobinSlots)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_JensenSe(benchmark::State& state) {
  const OperatorParams p{64, 2.5e-14, 3.5e-13, 1e13};
  for (auto _ : state) {
    benchmark::DoNotOptimize(jensen_se_x(p));
    benchmark::DoNotOptimize(jensen_se_y(p));
  }
  state.SetItemsProcessed(state.iterations() * 2);
}
BENCHMARK(BM_JensenSe);

void BM_CcdfZ(benchmark::State& state) {
  const CcdfParams p{64, 0.5, 3.5e-13};
  double z = -1e-12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccdf_z(p, z));
    z = -z;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CcdfZ);

}  // namespace
