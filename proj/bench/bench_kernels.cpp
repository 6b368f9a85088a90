// Serial reference vs OpenMP kernels on random Gaussian-integer matrices,
// plus the two end-to-end pipelines at a fixed size.

#include "jordanforge/jnf.hpp"
#include "jordanforge/kernels.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

using namespace jforge;

namespace {

IntMatrix random_matrix(std::size_t n, std::size_t bits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    gmp_randclass gen(gmp_randinit_default);
    gen.seed(static_cast<unsigned long>(rng()));
    IntMatrix m(n, n);
    for (auto& z : m.flat()) z = GaussInt(BigInt(gen.get_z_bits(bits)) - pow2(bits - 1), BigInt(gen.get_z_bits(bits)) - pow2(bits - 1));
    return m;
}

void set_parallel(benchmark::State& state) {
    kernels::set_threads(omp_get_max_threads());
    state.counters["threads"] = kernels::threads();
}

void BM_matmul_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    IntMatrix a = random_matrix(n, 256, 1);
    IntMatrix b = random_matrix(n, 256, 2);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::matmul_serial(a, b));
}

void BM_matmul_parallel(benchmark::State& state) {
    set_parallel(state);
    const auto n = static_cast<std::size_t>(state.range(0));
    IntMatrix a = random_matrix(n, 256, 1);
    IntMatrix b = random_matrix(n, 256, 2);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::matmul_parallel(a, b));
}

void BM_bareiss_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    IntMatrix a = random_matrix(n, 64, 3);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::bareiss_serial(a, n));
}

void BM_bareiss_parallel(benchmark::State& state) {
    set_parallel(state);
    const auto n = static_cast<std::size_t>(state.range(0));
    IntMatrix a = random_matrix(n, 64, 3);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::bareiss_parallel(a, n));
}

void BM_jnf(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    IntMatrix a = random_matrix(n, 4, 4);
    for (auto _ : state) benchmark::DoNotOptimize(jnf(a, 64));
}

}  // namespace

BENCHMARK(BM_matmul_serial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matmul_parallel)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bareiss_serial)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bareiss_parallel)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_jnf)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
