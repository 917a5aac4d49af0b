// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits nonzero if any required criterion fails. The Compas criterion only
// runs when FAIRRANK_COMPAS_CSV / FAIRRANK_COMPAS_SCHEMA point at the
// user-supplied data; it is reported as SKIP otherwise.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "fairrank/constraints.hpp"
#include "fairrank/dataset.hpp"
#include "fairrank/losses.hpp"
#include "fairrank/metrics.hpp"
#include "fairrank/model.hpp"
#include "fairrank/optimizer.hpp"
#include "fairrank/report.hpp"
#include "fairrank/rng.hpp"
#include "fairrank/synth.hpp"
#include "fairrank/tabular.hpp"
#include "fairrank/trainer.hpp"
#include "oracles.hpp"

using namespace fairrank;

namespace {

int g_failures = 0;

void report(const char* criterion, bool pass, const std::string& details) {
    std::printf("%s criterion %s: %s\n", pass ? "PASS" : "FAIL", criterion, details.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof buffer, format, args);
    va_end(args);
    return buffer;
}

GammaConstraint intra_gamma() { return {{0, 0, 1.0 / 3, 1.0 / 3, 1.0 / 3}}; }

// Dataset materialization mirrors the CLI's seed-stream scheme so CLI runs
// and acceptance runs see identical data.
enum : std::uint64_t { kPoolStream = 10, kTestStream = 11, kSplitStream = 13 };

struct SynthRun {
    Dataset train, validation, test;
};

SynthRun square_run(std::uint64_t seed, std::size_t n_pool, double q1, std::size_t n_test) {
    SquareConfig pool_cfg{n_pool, q1, Rng::stream(seed, kPoolStream).next_u64()};
    const Dataset pool = gen_square(pool_cfg);
    auto [train, validation] = split(pool, 0.4, Rng::stream(seed, kSplitStream).next_u64());
    SquareConfig test_cfg{n_test, q1, Rng::stream(seed, kTestStream).next_u64()};
    return {std::move(train), std::move(validation), gen_square(test_cfg)};
}

SynthRun disk_run(std::uint64_t seed, std::size_t n_pool, std::size_t n_test) {
    DiskConfig pool_cfg{n_pool, 0.5, Rng::stream(seed, kPoolStream).next_u64()};
    const Dataset pool = gen_disk(pool_cfg);
    auto [train, validation] = split(pool, 0.4, Rng::stream(seed, kSplitStream).next_u64());
    DiskConfig test_cfg{n_test, 0.5, Rng::stream(seed, kTestStream).next_u64()};
    return {std::move(train), std::move(validation), gen_disk(test_cfg)};
}

double pooled_auc(const CellScores& cells) {
    return auc(EmpiricalCdf(cells.pooled_neg()), EmpiricalCdf(cells.pooled_pos()));
}

// ---- Criterion 1: fast AUC vs brute-force pair enumeration ----

void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(20240901);
    int mismatches = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n_neg = 1 + rng.uniform_below(200);
        const std::size_t n_pos = 1 + rng.uniform_below(200);
        std::vector<double> neg(n_neg), pos(n_pos);
        // Coarse value grid forces heavy ties.
        const double levels = 2.0 + static_cast<double>(rng.uniform_below(25));
        for (auto& s : neg) s = std::floor(rng.uniform01() * levels) / levels;
        for (auto& s : pos) s = std::floor(rng.uniform01() * levels) / levels;
        const double fast = auc(EmpiricalCdf(neg), EmpiricalCdf(pos));
        const double brute = oracle::auc_brute_force(neg, pos);
        if (fast != brute) ++mismatches;
    }
    const double elapsed = seconds_since(start);
    report("1", mismatches == 0 && elapsed < 1.0,
           fmt("AUC oracle equivalence: %d/200 bit-exact mismatches, %.3f s", mismatches,
               elapsed));
}

// ---- Criterion 2: finite-difference gradient checks ----

void criterion_2() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(777);
    double worst = 0.0;
    for (int instance = 0; instance < 10; ++instance) {
        const int depth = instance % 3;  // D in {0,1,2}
        Batch batch;
        batch.rows = 12;
        batch.dim = 3;
        batch.X.resize(batch.rows * batch.dim);
        for (double& x : batch.X) x = rng.normal();
        for (std::size_t i = 0; i < batch.rows; ++i) {
            batch.labels.push_back(i % 2 == 0 ? 1 : -1);
            batch.groups.push_back(static_cast<int>((i / 2) % 2));
        }
        MlpScorer model(depth, 3, static_cast<std::uint64_t>(rng.next_u64()));
        for (double& p : model.params()) p = 0.5 * rng.normal();

        const GammaConstraint gamma = intra_gamma();
        const std::uint64_t pair_seed = rng.next_u64();
        auto auc_loss = [&](const MlpScorer& m) {
            Rng pair_rng(pair_seed);
            return loss_auc_constrained(m, batch, gamma, 1.0, 0.7, 0.01, 25, pair_rng);
        };
        RocPenaltyConfig penalty;
        penalty.alpha_h = {0.5};
        penalty.lambda_h = {1.0};
        penalty.alpha_g = {0.25};
        penalty.lambda_g = {2.0};
        AdaptiveParams adaptive;
        adaptive.c_h = {0.6};
        adaptive.t_h = {0.1};
        adaptive.c_g = {-0.8};
        adaptive.t_g = {-0.2};
        auto roc_loss = [&](const MlpScorer& m) {
            Rng pair_rng(pair_seed + 1);
            return loss_roc_constrained(m, batch, penalty, adaptive, 0.02, 25, pair_rng);
        };

        for (int which = 0; which < 2; ++which) {
            const auto reference = which == 0 ? auc_loss(model) : roc_loss(model);
            auto value_at = [&](std::span<const double> p) {
                MlpScorer probe = model;
                std::copy(p.begin(), p.end(), probe.params().begin());
                return (which == 0 ? auc_loss(probe) : roc_loss(probe)).value;
            };
            const auto check = grad_check(value_at, reference.grad, model.params(), 1e-5);
            worst = std::max(worst, check.max_rel_error);
        }
    }
    const double elapsed = seconds_since(start);
    report("2", worst < 1e-4 && elapsed < 10.0,
           fmt("gradient correctness: max relative error %.3g over 10 instances x 2 losses, "
               "%.2f s",
               worst, elapsed));
}

// ---- Criteria 3 and 5: square example reproduction and c-recovery ----

void criteria_3_and_5() {
    const auto start = std::chrono::steady_clock::now();
    struct Arm {
        double lambda;
        std::vector<double> aucs, gaps, family_cs;
    };
    Arm arms[2] = {{0.0, {}, {}, {}}, {1.0, {}, {}, {}}};
    double slowest = 0.0;

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const SynthRun run = square_run(seed, 10000, 17.0 / 20.0, 20000);
        for (Arm& arm : arms) {
            const auto run_start = std::chrono::steady_clock::now();
            AucTrainConfig cfg;
            cfg.lambda = arm.lambda;
            cfg.n_iter = 10000;
            cfg.lambda_reg = 0.01;
            cfg.depth = 0;
            cfg.seed = seed;
            const TrainResult result = train_auc(run.train, run.validation, intra_gamma(), cfg);
            slowest = std::max(slowest, seconds_since(run_start));

            const auto scores = score_dataset(result.model, run.test);
            const CellScores cells = CellScores::from_dataset(run.test, scores);
            const ConstraintGap gap = named_constraint_gap(
                ConstraintKind::IntraGroup, cells, Rates::from_counts(cell_counts(run.test)));
            arm.aucs.push_back(pooled_auc(cells));
            arm.gaps.push_back(gap.auc_a - gap.auc_b);
            const auto w = result.model.output_weights();
            arm.family_cs.push_back(square_family_c(w[0], w[1]));
        }
    }

    auto mean = [](const std::vector<double>& v) {
        double acc = 0.0;
        for (double x : v) acc += x;
        return acc / static_cast<double>(v.size());
    };
    const double auc0 = mean(arms[0].aucs), gap0 = std::abs(mean(arms[0].gaps));
    const double auc1 = mean(arms[1].aucs), gap1 = std::abs(mean(arms[1].gaps));
    const bool pass = auc0 >= 0.76 && auc0 <= 0.82 && gap0 >= 0.23 && gap0 <= 0.33 &&
                      auc1 >= 0.70 && auc1 <= 0.76 && gap1 <= 0.03 && slowest <= 120.0;
    report("3", pass,
           fmt("square-example reproduction (10 seeds): lambda=0 auc %.3f (want 0.76..0.82) "
               "dAUC %.3f (want 0.23..0.33); lambda=1 auc %.3f (want 0.70..0.76) dAUC %.3f "
               "(want <=0.03); slowest run %.1f s (budget 120 s); total %.1f s",
               auc0, gap0, auc1, gap1, slowest, seconds_since(start)));

    int in_band = 0, below = 0;
    for (double c : arms[1].family_cs)
        if (c >= 0.42 && c <= 0.58) ++in_band;
    for (double c : arms[0].family_cs)
        if (c < 0.45) ++below;
    report("5", in_band >= 6 && below >= 6,
           fmt("c-recovery: lambda=1 maps into [0.42,0.58] for %d/10 seeds (need >=6); "
               "lambda=0 maps below 0.45 for %d/10 (need >=6)",
               in_band, below));
}

// ---- Criterion 4: disk example reproduction ----

void criterion_4() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> unc_aucs, unc_deltas, roc_aucs, roc_deltas;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const SynthRun run = disk_run(seed, 10000, 20000);

        AucTrainConfig unc_cfg;
        unc_cfg.lambda = 0.0;
        unc_cfg.n_iter = 10000;
        unc_cfg.lambda_reg = 0.01;
        unc_cfg.seed = seed;
        const TrainResult unc = train_auc(run.train, run.validation, intra_gamma(), unc_cfg);
        {
            const auto scores = score_dataset(unc.model, run.test);
            const CellScores cells = CellScores::from_dataset(run.test, scores);
            unc_aucs.push_back(pooled_auc(cells));
            unc_deltas.push_back(delta(CdfFamily::H, cells, 0.75));
        }

        RocTrainConfig roc_cfg;
        roc_cfg.penalty.alpha_h = {0.75};
        roc_cfg.penalty.lambda_h = {1.0};
        roc_cfg.n_iter = 10000;
        roc_cfg.lambda_reg = 0.01;
        roc_cfg.seed = seed;
        const TrainResult roc = train_roc(run.train, run.validation, roc_cfg);
        {
            const auto scores = score_dataset(roc.model, run.test);
            const CellScores cells = CellScores::from_dataset(run.test, scores);
            roc_aucs.push_back(pooled_auc(cells));
            roc_deltas.push_back(delta(CdfFamily::H, cells, 0.75));
        }
    }
    auto mean = [](const std::vector<double>& v) {
        double acc = 0.0;
        for (double x : v) acc += x;
        return acc / static_cast<double>(v.size());
    };
    const double auc_u = mean(unc_aucs), delta_u = std::abs(mean(unc_deltas));
    const double auc_r = mean(roc_aucs), delta_r = std::abs(mean(roc_deltas));
    const bool pass = auc_u >= 0.77 && auc_u <= 0.83 && delta_u >= 0.33 && delta_u <= 0.43 &&
                      auc_r >= 0.72 && auc_r <= 0.78 && delta_r <= 0.03;
    report("4", pass,
           fmt("disk-example reproduction (10 seeds): unconstrained auc %.3f (want "
               "0.77..0.83) |d_H(3/4)| %.3f (want 0.33..0.43); roc-constrained auc %.3f "
               "(want 0.72..0.78) |d_H(3/4)| %.3f (want <=0.03); total %.1f s",
               auc_u, delta_u, auc_r, delta_r, seconds_since(start)));
}

// ---- Criterion 6: group-symmetry null test ----

Dataset coin_flip_groups(const Dataset& source, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<LabeledSample> samples;
    samples.reserve(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
        LabeledSample s = source[i];
        s.group = rng.bernoulli(0.5) ? 1 : 0;
        samples.push_back(std::move(s));
    }
    return Dataset(std::move(samples), source.dim());
}

void criterion_6() {
    const auto start = std::chrono::steady_clock::now();
    // eta = x1 for everyone; groups assigned by a fair coin independent of (X, Y).
    SquareConfig pool_cfg{20000, 0.0, 424243};
    const Dataset pool = coin_flip_groups(gen_square(pool_cfg), 5150);
    auto [train, validation] = split(pool, 0.4, 31);
    SquareConfig test_cfg{20000, 0.0, 424244};
    const Dataset test = coin_flip_groups(gen_square(test_cfg), 5151);

    AucTrainConfig cfg;
    cfg.lambda = 0.0;
    cfg.n_iter = 3000;
    cfg.lambda_reg = 0.01;
    cfg.seed = 6;
    const TrainResult result = train_auc(train, validation, intra_gamma(), cfg);

    const auto scores = score_dataset(result.model, test);
    const CellScores cells = CellScores::from_dataset(test, scores);
    const CVector c = c_vector(cells);
    const Rates rates = Rates::from_counts(cell_counts(test));

    double worst_gamma = 0.0, worst_delta = 0.0;
    for (ConstraintKind kind : kAllConstraintKinds)
        worst_gamma =
            std::max(worst_gamma, std::abs(gamma_value(make_named(kind, rates), c)));
    for (double alpha : {0.125, 0.25, 0.5, 0.75}) {
        worst_delta = std::max(worst_delta, std::abs(delta(CdfFamily::H, cells, alpha)));
        worst_delta = std::max(worst_delta, std::abs(delta(CdfFamily::G, cells, alpha)));
    }
    report("6", worst_gamma <= 0.02 && worst_delta <= 0.05,
           fmt("group-symmetry null test: max |Gamma^T C| %.4f (want <=0.02), max "
               "|Delta_{F,alpha}| %.4f (want <=0.05), %.1f s",
               worst_gamma, worst_delta, seconds_since(start)));
}

// ---- Criterion 7: constraint-family relevance checks ----

void criterion_7() {
    Rates rates;
    rates.q = {0.5, 0.5};
    rates.p_z = {0.4, 0.6};
    rates.p = 0.5;

    const auto start = std::chrono::steady_clock::now();
    bool all_named = true;
    for (ConstraintKind kind : kAllConstraintKinds)
        all_named = all_named && is_relevant(mixture_form(kind, rates));
    const MixtureConstraint swapped{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}};
    const bool counterexample_fails = !is_relevant(swapped);
    const double elapsed = seconds_since(start);
    report("7", all_named && counterexample_fails && elapsed < 1e-3,
           fmt("constraint relevance: six named mixtures relevant=%s, swapped counterexample "
               "rejected=%s, %.0f microseconds",
               all_named ? "yes" : "no", counterexample_fails ? "yes" : "no",
               elapsed * 1e6));
}

// ---- Criterion 8: discretization structure check ----

void criterion_8() {
    const auto start = std::chrono::steady_clock::now();
    const SynthRun run = disk_run(8, 10000, 20000);
    RocTrainConfig cfg;
    cfg.penalty.alpha_h = {1.0 / 8, 2.0 / 8, 3.0 / 8, 4.0 / 8, 5.0 / 8, 6.0 / 8};
    cfg.penalty.lambda_h = std::vector<double>(6, 1.0);
    cfg.n_iter = 10000;
    cfg.lambda_reg = 0.01;
    cfg.seed = 8;
    const TrainResult result = train_roc(run.train, run.validation, cfg);

    const auto scores = score_dataset(result.model, run.test);
    const CellScores cells = CellScores::from_dataset(run.test, scores);
    EmpiricalCdf h0(cells.neg[0]), h1(cells.neg[1]);

    double grid_max = 0.0;
    for (double alpha : cfg.penalty.alpha_h)
        grid_max = std::max(grid_max, std::abs(delta_point(h0, h1, alpha)));
    double sup = 0.0;
    for (int i = 0; i <= 100; ++i)
        sup = std::max(sup,
                       std::abs(delta_point(h0, h1, 0.75 * static_cast<double>(i) / 100.0)));
    report("8", sup <= grid_max + 0.15,
           fmt("discretization structure: sup |d_H| over [0,3/4] = %.3f vs grid max %.3f + "
               "0.15 = %.3f, %.1f s",
               sup, grid_max, grid_max + 0.15, seconds_since(start)));
}

// ---- Criterion 9 (optional): Compas reproduction with user-supplied data ----

void criterion_9() {
    const char* csv_path = std::getenv("FAIRRANK_COMPAS_CSV");
    const char* schema_path = std::getenv("FAIRRANK_COMPAS_SCHEMA");
    if (csv_path == nullptr || schema_path == nullptr) {
        std::printf("SKIP criterion 9: set FAIRRANK_COMPAS_CSV and FAIRRANK_COMPAS_SCHEMA "
                    "to run the Compas reproduction\n");
        return;
    }
    const auto start = std::chrono::steady_clock::now();
    const TabularSchema schema = TabularSchema::from_json_file(schema_path);
    auto rows = read_csv(csv_path);
    std::vector<std::vector<std::string>> body(rows.begin() + 1, rows.end());
    Rng shuffle(Rng::stream(9, 12).next_u64());
    for (std::size_t i = body.size(); i > 1; --i)
        std::swap(body[i - 1], body[shuffle.uniform_below(i)]);
    const auto n_test = static_cast<std::size_t>(0.2 * static_cast<double>(body.size()));
    std::vector<std::vector<std::string>> test_rows{rows.front()}, pool_rows{rows.front()};
    test_rows.insert(test_rows.end(), body.begin(), body.begin() + static_cast<long>(n_test));
    pool_rows.insert(pool_rows.end(), body.begin() + static_cast<long>(n_test), body.end());
    const LoadedTable pool = load_rows(pool_rows, schema);
    const LoadedTable test = load_rows_with(test_rows, schema, pool.report);
    auto [train, validation] = split(pool.data, 0.4, Rng::stream(9, 13).next_u64());

    const Rates rates = Rates::from_counts(cell_counts(train));
    const GammaConstraint bpsn = make_named(ConstraintKind::Bpsn, rates);

    auto evaluate = [&](const MlpScorer& model) {
        const auto scores = score_dataset(model, test.data);
        const CellScores cells = CellScores::from_dataset(test.data, scores);
        const ConstraintGap gap = named_constraint_gap(
            ConstraintKind::Bpsn, cells, Rates::from_counts(cell_counts(test.data)));
        return std::tuple<double, double, CellScores>(pooled_auc(cells), gap.delta_auc,
                                                      cells);
    };

    AucTrainConfig unc_cfg;
    unc_cfg.lambda = 0.0;
    unc_cfg.depth = 2;
    unc_cfg.n_iter = 10000;
    unc_cfg.lambda_reg = 0.05;
    unc_cfg.seed = 9;
    const auto [auc_u, gap_u, cells_u] =
        evaluate(train_auc(train, validation, bpsn, unc_cfg).model);

    AucTrainConfig con_cfg = unc_cfg;
    con_cfg.lambda = 0.5;
    const auto [auc_c, gap_c, cells_c] =
        evaluate(train_auc(train, validation, bpsn, con_cfg).model);

    RocTrainConfig roc_cfg;
    roc_cfg.penalty.alpha_h = {1.0 / 8, 1.0 / 4};
    roc_cfg.penalty.lambda_h = {0.25, 0.25};
    roc_cfg.penalty.alpha_g = {1.0 / 8, 1.0 / 4};
    roc_cfg.penalty.lambda_g = {0.25, 0.25};
    roc_cfg.depth = 2;
    roc_cfg.n_iter = 10000;
    roc_cfg.lambda_reg = 0.05;
    roc_cfg.seed = 9;
    const TrainResult roc = train_roc(train, validation, roc_cfg);
    const auto roc_scores = score_dataset(roc.model, test.data);
    const CellScores roc_cells = CellScores::from_dataset(test.data, roc_scores);
    const double dh = std::abs(delta(CdfFamily::H, roc_cells, 0.125));
    const double dg = std::abs(delta(CdfFamily::G, roc_cells, 0.125));

    const bool pass = std::abs(auc_u - 0.72) <= 0.03 && std::abs(gap_u - 0.20) <= 0.05 &&
                      gap_c <= 0.03 && auc_c >= 0.68 && dh <= 0.04 && dg <= 0.04;
    report("9", pass,
           fmt("compas reproduction: unconstrained auc %.3f dAUC(BPSN) %.3f; constrained "
               "auc %.3f dAUC %.3f; roc-constrained |d_H(1/8)| %.3f |d_G(1/8)| %.3f; %.0f s",
               auc_u, gap_u, auc_c, gap_c, dh, dg, seconds_since(start)));
}

// ---- Qualitative generalization trend (bounds are not reproducible) ----

void generalization_trend() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> gaps;
    for (std::size_t n : {1000u, 4000u, 16000u}) {
        double mean_gap = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            SquareConfig pool_cfg{n, 17.0 / 20.0, Rng::stream(seed, kPoolStream).next_u64()};
            const Dataset pool = gen_square(pool_cfg);
            auto [train, validation] =
                split(pool, 0.4, Rng::stream(seed, kSplitStream).next_u64());
            SquareConfig test_cfg{20000, 17.0 / 20.0,
                                  Rng::stream(seed, kTestStream).next_u64()};
            const Dataset test = gen_square(test_cfg);

            AucTrainConfig cfg;
            cfg.lambda = 0.0;
            cfg.n_iter = 3000;
            cfg.lambda_reg = 0.01;
            cfg.seed = seed;
            const TrainResult result = train_auc(train, validation, intra_gamma(), cfg);

            const auto pool_scores = score_dataset(result.model, pool);
            const auto test_scores = score_dataset(result.model, test);
            const double pool_value =
                pooled_auc(CellScores::from_dataset(pool, pool_scores));
            const double test_value =
                pooled_auc(CellScores::from_dataset(test, test_scores));
            mean_gap += std::abs(pool_value - test_value) / 5.0;
        }
        gaps.push_back(mean_gap);
    }
    const bool pass = gaps[0] >= gaps[1] && gaps[1] >= gaps[2];
    report("G", pass,
           fmt("train/test gap trend (qualitative): mean |gap| %.4f (n=1000) -> %.4f "
               "(n=4000) -> %.4f (n=16000), monotone=%s, %.1f s",
               gaps[0], gaps[1], gaps[2], pass ? "yes" : "no", seconds_since(start)));
}

}  // namespace

int main() {
    std::printf("fairrank acceptance suite\n");
    const auto start = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criteria_3_and_5();
    criterion_4();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    generalization_trend();
    std::printf("%d failing criteria, %.1f s total\n", g_failures, seconds_since(start));
    return g_failures == 0 ? 0 : 1;
}
