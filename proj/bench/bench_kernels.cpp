// Serial reference vs OpenMP kernels on the same inputs.

#include <benchmark/benchmark.h>

#include "sparselb/constructions.hpp"
#include "sparselb/kernels.hpp"
#include "sparselb/witnesses.hpp"

namespace {

using namespace sparselb;

SparseMatrix bench_matrix(std::size_t n) {
  return sample_sparse_sign_jl(64, n, 4, RngSeed{11});
}

void BM_MaxDotSerial(benchmark::State& state) {
  const auto a = bench_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::max_abs_column_dot(a));
}

void BM_MaxDotParallel(benchmark::State& state) {
  const auto a = bench_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::max_abs_column_dot(a));
}

void BM_RipScanSerial(benchmark::State& state) {
  const auto a = sample_sparse_sign_jl(16, static_cast<std::size_t>(state.range(0)), 2,
                                       RngSeed{5});
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::rip_scan(a, 3));
}

void BM_RipScanParallel(benchmark::State& state) {
  const auto a = sample_sparse_sign_jl(16, static_cast<std::size_t>(state.range(0)), 2,
                                       RngSeed{5});
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::rip_scan(a, 3));
}

void BM_AgreementSerial(benchmark::State& state) {
  const Code code = random_code(64, 16, static_cast<std::size_t>(state.range(0)), 0.5,
                                RngSeed{3});
  const auto flat = code.flat();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::max_agreement({flat, code.t}));
  }
}

void BM_AgreementParallel(benchmark::State& state) {
  const Code code = random_code(64, 16, static_cast<std::size_t>(state.range(0)), 0.5,
                                RngSeed{3});
  const auto flat = code.flat();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::parallel::max_agreement({flat, code.t}));
  }
}

void BM_OseSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ose_failure_probability_serial(256, 32, 1024, state.range(0), RngSeed{1}));
  }
}

void BM_OseParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ose_failure_probability(256, 32, 1024, state.range(0), RngSeed{1}));
  }
}

}  // namespace

BENCHMARK(BM_MaxDotSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_MaxDotParallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_RipScanSerial)->Arg(24)->Arg(40);
BENCHMARK(BM_RipScanParallel)->Arg(24)->Arg(40);
BENCHMARK(BM_AgreementSerial)->Arg(200)->Arg(800);
BENCHMARK(BM_AgreementParallel)->Arg(200)->Arg(800);
BENCHMARK(BM_OseSerial)->Arg(200);
BENCHMARK(BM_OseParallel)->Arg(200);

BENCHMARK_MAIN();
