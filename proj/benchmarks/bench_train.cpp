#include <benchmark/benchmark.h>

#include "fairrank/losses.hpp"
#include "fairrank/model.hpp"
#include "fairrank/optimizer.hpp"
#include "fairrank/rng.hpp"
#include "fairrank/synth.hpp"
#include "fairrank/trainer.hpp"

using namespace fairrank;

namespace {

Batch sample(const Dataset& data, int n, Rng& rng) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
    for (auto& i : idx) i = rng.uniform_below(data.size());
    return make_batch(data, idx);
}

// One full constrained training step: batch assembly, loss + gradient, ADAM.
void bm_train_auc_step(benchmark::State& state) {
    SquareConfig cfg{10000, 0.85, 1};
    const Dataset data = gen_square(cfg);
    MlpScorer model(static_cast<int>(state.range(0)), 2, 42);
    AdamState adam(model.parameter_count());
    GammaConstraint intra{{0, 0, 1.0 / 3, 1.0 / 3, 1.0 / 3}};
    Rng batch_rng(7), pair_rng(8);
    for (auto _ : state) {
        const Batch batch = sample(data, 100, batch_rng);
        const auto loss =
            loss_auc_constrained(model, batch, intra, 1.0, 0.5, 0.01, 100, pair_rng,
                                 MissingCellPolicy::Skip);
        model.commit_batch_stats(loss.batch_mean, loss.batch_sigma);
        adam_step(model.params(), loss.grad, adam);
    }
}

void bm_eval_forward(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    MlpScorer model(2, dim, 42);
    Rng rng(3);
    std::vector<double> X(static_cast<std::size_t>(dim) * 1000);
    for (double& x : X) x = rng.normal();
    for (auto _ : state) {
        auto out = model.forward(X, 1000, RunMode::Eval);
        benchmark::DoNotOptimize(out.scores[0]);
    }
}

void bm_validation_gamma_estimate(benchmark::State& state) {
    Rng rng(5);
    CellScores cells;
    for (auto* cell : {&cells.neg[0], &cells.neg[1], &cells.pos[0], &cells.pos[1]}) {
        cell->resize(1000);
        for (double& s : *cell) s = rng.normal();
    }
    GammaConstraint intra{{0, 0, 1.0 / 3, 1.0 / 3, 1.0 / 3}};
    Rng est_rng(9);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            gamma_c_estimate(intra, cells, state.range(0), est_rng));
}

}  // namespace

BENCHMARK(bm_train_auc_step)->Arg(0)->Arg(2);
BENCHMARK(bm_eval_forward)->Arg(16)->Arg(107);
BENCHMARK(bm_validation_gamma_estimate)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
