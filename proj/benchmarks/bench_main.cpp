#include <benchmark/benchmark.h>

#include <string>

#include "pwlhc/cycle.hpp"
#include "pwlhc/homoclinic.hpp"
#include "pwlhc/map.hpp"
#include "pwlhc/solver.hpp"
#include "pwlhc/spectral.hpp"
#include "pwlhc/word.hpp"

using namespace pwlhc;

namespace {

// Reference saddle/reinjection pair used by all benchmarks.
const BcnfParams kReference{1.1770635074, 1.0, 0.4334058651,
                            -1.0170722063, 0.5, 1.0, 1.0};
const char* kX = "RLLR";
const char* kY = "LLR";

Word sweep_word(int k) { return Word(word_power(Word(kX), k) + kY); }

}  // namespace

static void BM_Compose(benchmark::State& state) {
  const PwlMap f = bcnf3(kReference);
  const Word w = sweep_word(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compose(f, w));
}
BENCHMARK(BM_Compose)->DenseRange(0, 8, 2);

static void BM_FindCycle(benchmark::State& state) {
  const PwlMap f = bcnf3(kReference);
  const Word w = sweep_word(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_cycle(f, w));
}
BENCHMARK(BM_FindCycle)->DenseRange(0, 8, 2);

static void BM_BuildFrame(benchmark::State& state) {
  const PwlMap f = bcnf3(kReference);
  const Matrix M = compose(f, Word(kX)).M;
  for (auto _ : state) benchmark::DoNotOptimize(build_frame(M));
}
BENCHMARK(BM_BuildFrame);

static void BM_Residual(benchmark::State& state) {
  const Word X(kX), Y(kY);
  for (auto _ : state) benchmark::DoNotOptimize(residual(kReference, X, Y));
}
BENCHMARK(BM_Residual);

static void BM_SolveFromRoundedStart(benchmark::State& state) {
  BcnfParams start = kReference;
  start.tau_L = 1.18;
  start.tau_R = -1.02;
  start.delta_L = 0.43;
  const Word X(kX), Y(kY);
  for (auto _ : state) benchmark::DoNotOptimize(solve(start, X, Y));
}
BENCHMARK(BM_SolveFromRoundedStart)->Unit(benchmark::kMillisecond);

static void BM_BuildOrbit(benchmark::State& state) {
  const PwlMap f = bcnf3(kReference);
  const Word X(kX), Y(kY);
  const SpectralFrame frame = build_frame(compose(f, X).M);
  const Vector x0 = find_cycle(f, X).points[0];
  for (auto _ : state)
    benchmark::DoNotOptimize(build_s_orbit(f, X, Y, frame, x0, {}));
}
BENCHMARK(BM_BuildOrbit);

static void BM_VerifySubsumed(benchmark::State& state) {
  const PwlMap f = bcnf3(kReference);
  const Word X(kX), Y(kY);
  const SpectralFrame frame = build_frame(compose(f, X).M);
  const Vector x0 = find_cycle(f, X).points[0];
  const HomoclinicOrbit orb = build_s_orbit(f, X, Y, frame, x0, {});
  for (auto _ : state) benchmark::DoNotOptimize(verify_subsumed(f, orb));
}
BENCHMARK(BM_VerifySubsumed);

static void BM_VerifyTheorems(benchmark::State& state) {
  const Word X(kX), Y(kY);
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_theorems(kReference, X, Y, 7));
}
BENCHMARK(BM_VerifyTheorems)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
