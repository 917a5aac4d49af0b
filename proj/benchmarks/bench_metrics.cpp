#include <benchmark/benchmark.h>

#include <vector>

#include "fairrank/cdf.hpp"
#include "fairrank/metrics.hpp"
#include "fairrank/rng.hpp"

using namespace fairrank;

namespace {

std::vector<double> scores(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out(n);
    for (double& s : out) s = rng.normal();
    return out;
}

void bm_auc_sorted_merge(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    EmpiricalCdf neg(scores(n, 1));
    EmpiricalCdf pos(scores(n, 2));
    for (auto _ : state) benchmark::DoNotOptimize(auc(neg, pos));
}

void bm_auc_pair_enumeration(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto neg = scores(n, 1);
    const auto pos = scores(n, 2);
    for (auto _ : state) {
        std::uint64_t twice = 0;
        for (double a : neg)
            for (double b : pos) {
                if (b > a)
                    twice += 2;
                else if (b == a)
                    twice += 1;
            }
        benchmark::DoNotOptimize(static_cast<double>(twice) /
                                 static_cast<double>(2 * n * n));
    }
}

void bm_roc_curve_eval(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    EmpiricalCdf h(scores(n, 3));
    EmpiricalCdf g(scores(n, 4));
    for (auto _ : state) {
        double acc = 0.0;
        for (int i = 0; i <= 512; ++i) acc += roc_point(h, g, i / 512.0);
        benchmark::DoNotOptimize(acc);
    }
}

void bm_c_vector(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    CellScores cells;
    cells.neg[0] = scores(n, 5);
    cells.neg[1] = scores(n, 6);
    cells.pos[0] = scores(n, 7);
    cells.pos[1] = scores(n, 8);
    for (auto _ : state) benchmark::DoNotOptimize(c_vector(cells).c[0]);
}

}  // namespace

BENCHMARK(bm_auc_sorted_merge)->Arg(200)->Arg(2000)->Arg(20000);
BENCHMARK(bm_auc_pair_enumeration)->Arg(200)->Arg(2000);
BENCHMARK(bm_roc_curve_eval)->Arg(2000)->Arg(20000);
BENCHMARK(bm_c_vector)->Arg(2000);

BENCHMARK_MAIN();
