// Serial vs OpenMP matrix product over GF(q).
#include <benchmark/benchmark.h>

#include <vector>

#include "ccmm/kernels.hpp"
#include "ccmm/linalg.hpp"

namespace {

using Kernel = void (*)(const ccmm::FieldSpec&, std::span<const ccmm::Symbol>, std::span<const ccmm::Symbol>,
                        std::span<ccmm::Symbol>, std::size_t, std::size_t, std::size_t);

void run(benchmark::State& state, Kernel kernel) {
  const ccmm::FieldSpec field;
  const auto n = static_cast<std::size_t>(state.range(0));
  const ccmm::FieldMatrix a = ccmm::random_matrix(field, n, n, 1, 0);
  const ccmm::FieldMatrix b = ccmm::random_matrix(field, n, n, 1, 1);
  std::vector<ccmm::Symbol> c(n * n);
  for (auto _ : state) {
    kernel(field, a.entries(), b.entries(), c, n, n, n);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}

void BM_matmul_serial(benchmark::State& state) { run(state, ccmm::kernels::matmul_serial); }
void BM_matmul_parallel(benchmark::State& state) { run(state, ccmm::kernels::matmul_parallel); }

BENCHMARK(BM_matmul_serial)->RangeMultiplier(2)->Range(32, 512);
BENCHMARK(BM_matmul_parallel)->RangeMultiplier(2)->Range(32, 512);

}  // namespace
BENCHMARK_MAIN();
