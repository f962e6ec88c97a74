#include <benchmark/benchmark.h>

#include "aoi/config.hpp"
#include "aoi/opt.hpp"
#include "aoi/phy.hpp"
#include "aoi/queueing.hpp"
#include "aoi/sim.hpp"

namespace {

using aoi::Policy;
using aoi::Protocol;

aoi::opt::ProblemSpec default_problem(Protocol pr, Policy po) {
  const auto cfg = aoi::validate_config(aoi::default_config());
  return aoi::opt::build_problem(pr, po, cfg, aoi::opt::weakest_device(cfg));
}

void BM_StationaryPgf(benchmark::State& state) {
  const aoi::queueing::QueueParams p{0.5, 1.0, 0.0, 5};
  double z = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(aoi::queueing::st_stationary_pgf(p, z));
    z = z < 0.99 ? z + 0.01 : 0.0;
  }
}
BENCHMARK(BM_StationaryPgf);

void BM_PeakAoiMv(benchmark::State& state) {
  double lambda = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(aoi::queueing::peak_aoi_mv_value(lambda, 1.0, 0.4));
    lambda = lambda < 0.9 ? lambda + 0.001 : 0.1;
  }
}
BENCHMARK(BM_PeakAoiMv);

void BM_NomaSplit(benchmark::State& state) {
  std::vector<double> gains(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < gains.size(); ++i) gains[i] = 1.0 / static_cast<double>(i + 1);
  for (auto _ : state) benchmark::DoNotOptimize(aoi::phy::noma_power_split(2.0, gains));
}
BENCHMARK(BM_NomaSplit)->Arg(2)->Arg(10)->Arg(40);

void BM_BuildProblem(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(default_problem(Protocol::NOMA, Policy::MV));
}
BENCHMARK(BM_BuildProblem);

void BM_Subproblem(benchmark::State& state) {
  const auto p = default_problem(Protocol::TDMA, Policy::MV);
  for (auto _ : state) benchmark::DoNotOptimize(aoi::opt::solve_subproblem_fixed_lambda(p, 10.0));
}
BENCHMARK(BM_Subproblem);

void BM_ExactLinearSearch(benchmark::State& state) {
  const auto p = default_problem(Protocol::FDMA, Policy::ST);
  for (auto _ : state) benchmark::DoNotOptimize(aoi::opt::exact_linear_search(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ExactLinearSearch)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Ccp(benchmark::State& state) {
  const auto p = default_problem(Protocol::FDMA, Policy::MV);
  const auto x0 = aoi::opt::find_feasible_point(p);
  for (auto _ : state) benchmark::DoNotOptimize(aoi::opt::ccp_solve(p, x0));
}
BENCHMARK(BM_Ccp)->Unit(benchmark::kMicrosecond);

void BM_Simulate(benchmark::State& state) {
  aoi::sim::SimSpec spec;
  spec.params = {0.8, 1.0, 0.4, 1};
  spec.target_departures = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(aoi::sim::simulate(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
