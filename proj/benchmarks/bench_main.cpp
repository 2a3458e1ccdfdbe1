#include <benchmark/benchmark.h>

#include <string>

#include "wiretap/finite_alphabet.hpp"
#include "wiretap/monte_carlo.hpp"
#include "wiretap/problem_io.hpp"
#include "wiretap/sweep.hpp"

namespace {

using namespace wiretap;

WiretapProblem shipped(int j) {
  return load_problem(std::string(WIRETAP_DATA_DIR) + "/paper_j" + std::to_string(j) + ".json").problem;
}

void BM_SolveGeneral(benchmark::State& state) {
  const WiretapProblem p = shipped(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_general(p, {0.5, 0.1}).power);
}
BENCHMARK(BM_SolveGeneral)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_SweepRegion(benchmark::State& state) {
  const WiretapProblem p = shipped(1);
  const auto grid = rate_grid(0.1, 8.0, 0.1);
  SweepOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sweep_region(p, grid, opts).rows.size());
}
BENCHMARK(BM_SweepRegion)->Unit(benchmark::kMillisecond);

void BM_MutualInfo(benchmark::State& state) {
  const MiEvaluator ev(state.range(0) == 2 ? Alphabet::bpsk() : Alphabet::qam16());
  double rho = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.mutual_info(rho));
    rho = rho < 100.0 ? rho * 1.01 : 0.1;
  }
}
BENCHMARK(BM_MutualInfo)->Arg(2)->Arg(16);

void BM_MutualInfoInverse(benchmark::State& state) {
  const MiEvaluator ev(Alphabet::qpsk());
  for (auto _ : state) benchmark::DoNotOptimize(ev.inverse(1.3));
}
BENCHMARK(BM_MutualInfoInverse)->Unit(benchmark::kMicrosecond);

void BM_EstimateNonOutage(benchmark::State& state) {
  const WiretapProblem p = shipped(1);
  const RatePair r{0.5, 0.3};
  const BeamformerSolution s = solve_general(p, r);
  const ChannelSampler sampler(p, 1);
  for (auto _ : state) {
    const auto e = estimate_non_outage(p, r, s.w, sampler, {static_cast<std::size_t>(state.range(0)), 1});
    benchmark::DoNotOptimize(e.p_hat);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateNonOutage)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
