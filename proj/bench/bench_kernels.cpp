// Serial reference vs OpenMP kernels on random row-stochastic panels.

#include <benchmark/benchmark.h>

#include <random>

#include "copool/kernels.hpp"

using copool::Matrix;
namespace k = copool::kernels;

namespace {

Matrix random_stochastic(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> draw(1.0);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < cols; ++c) sum += m(r, c) = draw(rng);
        for (std::size_t c = 0; c < cols; ++c) m(r, c) /= sum;
    }
    return m;
}

constexpr std::size_t kOutcomes = 8;

template <void (*Kernel)(const Matrix&, double, Matrix&)>
void weights(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix f = random_stochastic(n, kOutcomes, 1);
    Matrix w(n, n);
    for (auto _ : state) {
        Kernel(f, 1e-4, w);
        benchmark::DoNotOptimize(w.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}

template <void (*Kernel)(const Matrix&, const Matrix&, Matrix&)>
void apply(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix w = random_stochastic(n, n, 2);
    const Matrix f = random_stochastic(n, n, 3);
    Matrix out(n, n);
    for (auto _ : state) {
        Kernel(w, f, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}

template <double (*Kernel)(const Matrix&)>
void spread(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix f = random_stochastic(n, kOutcomes, 4);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(f));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n / 2));
}

}  // namespace

BENCHMARK(weights<k::serial::consensual_weights>)->Name("weights/serial")->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(weights<k::parallel::consensual_weights>)->Name("weights/parallel")->Arg(50)->Arg(200)->Arg(800)->UseRealTime();
BENCHMARK(apply<k::serial::apply_weights>)->Name("apply/serial")->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(apply<k::parallel::apply_weights>)->Name("apply/parallel")->Arg(50)->Arg(200)->Arg(800)->UseRealTime();
BENCHMARK(spread<k::serial::delta>)->Name("delta/serial")->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(spread<k::parallel::delta>)->Name("delta/parallel")->Arg(50)->Arg(200)->Arg(800)->UseRealTime();

BENCHMARK_MAIN();
