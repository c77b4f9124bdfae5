// Serial references against their OpenMP counterparts.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "stree/fst.hpp"
#include "stree/geom.hpp"
#include "stree/mst.hpp"

namespace {

std::vector<stree::Point> cloud(std::size_t n, unsigned seed = 7) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::vector<stree::Point> pts(n);
    for (auto& p : pts)
        p = {u(rng), u(rng)};
    return pts;
}

std::vector<stree::Point> strip(std::size_t n, unsigned seed = 7) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<stree::Point> pts;
    for (std::size_t k = 0; k < n; ++k)
        pts.push_back({10.0 * (double(k) + 0.3 * (u(rng) - 0.5)), (k % 2 ? 10.0 : -10.0) * (0.3 + 0.5 * u(rng))});
    return pts;
}

void BM_DiameterSerial(benchmark::State& st) {
    const auto pts = cloud(std::size_t(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(stree::serial::diameter(pts));
}

void BM_DiameterParallel(benchmark::State& st) {
    const auto pts = cloud(std::size_t(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(stree::diameter(pts));
}

void BM_PrimSerial(benchmark::State& st) {
    const auto pts = cloud(std::size_t(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(stree::serial::prim(pts));
}

void BM_PrimParallel(benchmark::State& st) {
    const auto pts = cloud(std::size_t(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(stree::prim(pts));
}

void BM_FullTreeSerial(benchmark::State& st) {
    const auto pts = strip(std::size_t(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(stree::serial::best_full_tree(pts));
}

void BM_FullTreeParallel(benchmark::State& st) {
    const auto pts = strip(std::size_t(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(stree::best_full_tree(pts));
}

} // namespace

BENCHMARK(BM_DiameterSerial)->Arg(1000)->Arg(4000);
BENCHMARK(BM_DiameterParallel)->Arg(1000)->Arg(4000);
BENCHMARK(BM_PrimSerial)->Arg(1000)->Arg(4000);
BENCHMARK(BM_PrimParallel)->Arg(1000)->Arg(4000);
BENCHMARK(BM_FullTreeSerial)->Arg(6)->Arg(10);
BENCHMARK(BM_FullTreeParallel)->Arg(6)->Arg(10);

BENCHMARK_MAIN();
