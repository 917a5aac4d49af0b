#include "fairrank/trainer.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fairrank/error.hpp"
#include "fairrank/metrics.hpp"
#include "fairrank/optimizer.hpp"
#include "fairrank/rng.hpp"

namespace fairrank {

namespace {

// RNG stream tags, fixed so runs are reproducible from the single seed.
enum : std::uint64_t { kModelStream = 1, kBatchStream = 2, kPairStream = 3, kValStream = 4 };

void validate_common(const TrainConfig& cfg) {
    if (cfg.n_iter < 1) throw ConfigError("n_iter must be positive");
    if (cfg.batch_size < 2) throw ConfigError("batch size must be at least 2");
    if (cfg.pair_budget < 1) throw ConfigError("pair budget must be positive");
    if (cfg.val_pair_budget < 1) throw ConfigError("validation pair budget must be positive");
    if (cfg.adapt_every < 1) throw ConfigError("adaptation period must be positive");
    if (!(cfg.dc > 0.0 && cfg.dc <= 1.0)) throw ConfigError("dc must lie in (0,1]");
    if (cfg.lambda_reg < 0.0) throw ConfigError("lambda_reg must be nonnegative");
    if (cfg.depth < 0) throw ConfigError("depth must be nonnegative");
}

// Cells referenced by each elementary fairness component
// (0:H(0) 1:H(1) 2:G(0) 3:G(1)).
const std::vector<int>& component_cells(int l) {
    static const std::vector<int> cells[5] = {
        {0, 1}, {2, 3}, {0, 2, 3}, {0, 3, 1, 2}, {1, 2, 3}};
    return cells[l];
}

std::array<std::size_t, 4> cell_sizes(const Dataset& data) {
    const CellCounts counts = cell_counts(data);
    return {counts.n_neg_by_group[0], counts.n_neg_by_group[1], counts.n_pos_by_group[0],
            counts.n_pos_by_group[1]};
}

const char* kCellNames[4] = {"H(0)", "H(1)", "G(0)", "G(1)"};

void require_cells(const Dataset& data, const std::vector<int>& needed, const char* which) {
    const auto sizes = cell_sizes(data);
    for (int cell : needed)
        if (sizes[cell] == 0)
            throw ConfigError(std::string("required cell ") + kCellNames[cell] +
                              " is empty in the " + which + " set");
}

std::vector<int> gamma_required_cells(const GammaConstraint& gamma) {
    std::vector<int> needed;
    for (int l = 0; l < 5; ++l) {
        if (gamma.gamma[l] == 0.0) continue;
        for (int cell : component_cells(l))
            if (std::find(needed.begin(), needed.end(), cell) == needed.end())
                needed.push_back(cell);
    }
    return needed;
}

MlpScorer make_model(const Dataset& train, const TrainConfig& cfg) {
    const int width = cfg.hidden_width > 0 ? cfg.hidden_width : static_cast<int>(train.dim());
    Rng seeder = Rng::stream(cfg.seed, kModelStream);
    MlpScorer model(cfg.depth, static_cast<int>(train.dim()), width, seeder.next_u64());
    model.bn_momentum = cfg.bn_momentum;
    return model;
}

Batch sample_batch(const Dataset& train, int batch_size, Rng& rng) {
    std::vector<std::size_t> indices(static_cast<std::size_t>(batch_size));
    for (auto& idx : indices) idx = rng.uniform_below(train.size());
    return make_batch(train, indices);
}

Batch whole_dataset_batch(const Dataset& data) {
    std::vector<std::size_t> all(data.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return make_batch(data, all);
}

CellScores eval_cells(const MlpScorer& model, const Batch& batch) {
    const auto scores = model.forward(batch.X, batch.rows, RunMode::Eval).scores;
    CellScores cells;
    for (std::size_t i = 0; i < batch.rows; ++i) {
        auto& bucket =
            batch.labels[i] > 0 ? cells.pos[batch.groups[i]] : cells.neg[batch.groups[i]];
        bucket.push_back(scores[i]);
    }
    return cells;
}

void check_finite(double loss_value, long iteration, const LossBreakdown& parts) {
    if (std::isfinite(loss_value)) return;
    std::ostringstream msg;
    msg << "non-finite loss at iteration " << iteration << " (ranking=" << parts.ranking_term
        << ", fairness=" << parts.fairness_term << ", ridge=" << parts.ridge_term << ")";
    throw TrainError(msg.str());
}

}  // namespace

std::string TrainLog::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
    return out.str();
}

void TrainLog::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open training log for writing: " + path);
    out << to_csv();
    if (!out) throw ConfigError("failed writing training log: " + path);
}

TrainResult train_auc(const Dataset& train, const Dataset& validation,
                      const GammaConstraint& gamma, const AucTrainConfig& cfg) {
    validate_common(cfg);
    if (cfg.lambda < 0.0) throw ConfigError("lambda must be nonnegative");
    if (train.size() == 0 || validation.size() == 0)
        throw ConfigError("training and validation sets must be nonempty");

    const auto needed = gamma_required_cells(gamma);
    require_cells(train, needed, "training");
    require_cells(validation, needed, "validation");
    // The ranking term always needs both classes.
    const CellCounts train_counts = cell_counts(train);
    if (train_counts.n_pos() == 0 || train_counts.n_neg() == 0)
        throw ConfigError("training set must contain both classes");

    MlpScorer model = make_model(train, cfg);
    AdamState adam(model.parameter_count());
    Rng batch_rng = Rng::stream(cfg.seed, kBatchStream);
    Rng pair_rng = Rng::stream(cfg.seed, kPairStream);
    Rng val_rng = Rng::stream(cfg.seed, kValStream);

    const Batch val_batch = whole_dataset_batch(validation);

    double c = 0.0;
    int skipped = 0;
    TrainLog log;
    log.columns = {"iteration", "loss", "c", "val_gamma_c", "skipped_terms"};

    for (long iter = 1; iter <= cfg.n_iter; ++iter) {
        const Batch batch = sample_batch(train, cfg.batch_size, batch_rng);
        const LossBreakdown loss =
            loss_auc_constrained(model, batch, gamma, cfg.lambda, c, cfg.lambda_reg,
                                 cfg.pair_budget, pair_rng, MissingCellPolicy::Skip,
                                 cfg.temperature);
        check_finite(loss.value, iter, loss);
        skipped += loss.skipped_terms;

        model.commit_batch_stats(loss.batch_mean, loss.batch_sigma);
        adam_step(model.params(), loss.grad, adam);

        if (iter % cfg.adapt_every == 0) {
            const CellScores cells = eval_cells(model, val_batch);
            const double estimate =
                gamma_c_estimate(gamma, cells, cfg.val_pair_budget, val_rng);
            c = std::clamp(c + sgn(estimate) * cfg.dc, -1.0, 1.0);
            log.rows.push_back({static_cast<double>(iter), loss.value, c, estimate,
                                static_cast<double>(skipped)});
            skipped = 0;
        }
    }
    return {std::move(model), std::move(log)};
}

RocAdaptStep roc_adapt_step(double cdf0_at_t, double cdf1_at_t, double alpha, double c,
                            double t, double dc, double dt) {
    RocAdaptStep next;
    next.delta = cdf0_at_t - cdf1_at_t;
    // Distance of the survival levels from the target: both cells should
    // keep a mass of alpha above the threshold.
    next.sigma = (1.0 - cdf0_at_t) + (1.0 - cdf1_at_t) - 2.0 * alpha;
    if (std::abs(next.sigma) > std::abs(next.delta)) {
        next.t = t + sgn(next.sigma) * dt;
        next.c = c;
        next.moved_threshold = true;
    } else {
        next.t = t;
        next.c = std::clamp(c + sgn(next.delta) * dc, -1.0, 1.0);
        next.moved_threshold = false;
    }
    return next;
}

TrainResult train_roc(const Dataset& train, const Dataset& validation,
                      const RocTrainConfig& cfg) {
    validate_common(cfg);
    cfg.penalty.validate();
    if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive");
    if (train.size() == 0 || validation.size() == 0)
        throw ConfigError("training and validation sets must be nonempty");
    require_cells(train, {0, 1, 2, 3}, "training");
    require_cells(validation, {0, 1, 2, 3}, "validation");

    MlpScorer model = make_model(train, cfg);
    AdamState adam(model.parameter_count());
    Rng batch_rng = Rng::stream(cfg.seed, kBatchStream);
    Rng pair_rng = Rng::stream(cfg.seed, kPairStream);

    const Batch val_batch = whole_dataset_batch(validation);

    AdaptiveParams adaptive;
    adaptive.c_h.assign(cfg.penalty.m_h(), 0.0);
    adaptive.t_h.assign(cfg.penalty.m_h(), 0.0);
    adaptive.c_g.assign(cfg.penalty.m_g(), 0.0);
    adaptive.t_g.assign(cfg.penalty.m_g(), 0.0);

    TrainLog log;
    log.columns = {"iteration", "loss"};
    for (std::size_t k = 0; k < cfg.penalty.m_h(); ++k) {
        const std::string suffix = "_h" + std::to_string(k + 1);
        for (const char* base : {"c", "t", "delta", "sigma"})
            log.columns.push_back(base + suffix);
    }
    for (std::size_t k = 0; k < cfg.penalty.m_g(); ++k) {
        const std::string suffix = "_g" + std::to_string(k + 1);
        for (const char* base : {"c", "t", "delta", "sigma"})
            log.columns.push_back(base + suffix);
    }
    log.columns.push_back("skipped_terms");

    // Validation scores are refreshed (and the model re-scored) every
    // adapt_every iterations; the threshold/sign regulator itself steps once
    // per iteration against the cached scores. With dt = 0.001, thresholds
    // would otherwise be capped at n_iter/adapt_every * dt of total travel,
    // far short of the score quantiles they must reach.
    std::optional<EmpiricalCdf> cdf_h[2], cdf_g[2];
    int skipped = 0;
    for (long iter = 1; iter <= cfg.n_iter; ++iter) {
        const Batch batch = sample_batch(train, cfg.batch_size, batch_rng);
        const LossBreakdown loss =
            loss_roc_constrained(model, batch, cfg.penalty, adaptive, cfg.lambda_reg,
                                 cfg.pair_budget, pair_rng, MissingCellPolicy::Skip,
                                 cfg.temperature);
        check_finite(loss.value, iter, loss);
        skipped += loss.skipped_terms;

        model.commit_batch_stats(loss.batch_mean, loss.batch_sigma);
        adam_step(model.params(), loss.grad, adam);

        if (iter % cfg.adapt_every == 0) {
            const CellScores cells = eval_cells(model, val_batch);
            if (cfg.penalty.m_h() > 0) {
                cdf_h[0].emplace(cells.neg[0]);
                cdf_h[1].emplace(cells.neg[1]);
            }
            if (cfg.penalty.m_g() > 0) {
                cdf_g[0].emplace(cells.pos[0]);
                cdf_g[1].emplace(cells.pos[1]);
            }
        }

        // Threshold drift runs every iteration: against the cached scores it
        // converges to a quantile and stops. The sign parameters only move on
        // refresh iterations, when the group-gap sign is freshly measured;
        // stepping them against a stale sign winds them up.
        const bool fresh_stats = iter % cfg.adapt_every == 0;
        std::vector<RocAdaptStep> steps;
        for (int family = 0; family < 2; ++family) {
            const bool is_h = family == 0;
            const auto& alphas = is_h ? cfg.penalty.alpha_h : cfg.penalty.alpha_g;
            auto& cs = is_h ? adaptive.c_h : adaptive.c_g;
            auto& ts = is_h ? adaptive.t_h : adaptive.t_g;
            const auto& f0 = is_h ? cdf_h[0] : cdf_g[0];
            const auto& f1 = is_h ? cdf_h[1] : cdf_g[1];
            if (alphas.empty() || !f0.has_value()) continue;
            for (std::size_t k = 0; k < alphas.size(); ++k) {
                const RocAdaptStep step = roc_adapt_step((*f0)(ts[k]), (*f1)(ts[k]),
                                                         alphas[k], cs[k], ts[k], cfg.dc,
                                                         cfg.dt);
                if (step.moved_threshold) {
                    ts[k] = step.t;
                } else if (fresh_stats) {
                    cs[k] = step.c;
                }
                steps.push_back(step);
            }
        }

        if (iter % cfg.adapt_every == 0) {
            std::vector<double> row = {static_cast<double>(iter), loss.value};
            for (const RocAdaptStep& step : steps)
                row.insert(row.end(), {step.c, step.t, step.delta, step.sigma});
            row.push_back(static_cast<double>(skipped));
            log.rows.push_back(std::move(row));
            skipped = 0;
        }
    }
    return {std::move(model), std::move(log)};
}

std::vector<double> score_dataset(const MlpScorer& model, const Dataset& data) {
    const Batch batch = whole_dataset_batch(data);
    return model.forward(batch.X, batch.rows, RunMode::Eval).scores;
}

double l_lambda_criterion(const CellScores& cells, const GammaConstraint& gamma,
                          double lambda) {
    EmpiricalCdf h(cells.pooled_neg());
    EmpiricalCdf g(cells.pooled_pos());
    const double ranking = auc(h, g);
    // Same sup-norm scaling of Gamma as the training penalty.
    double gamma_sup = 0.0;
    for (double w : gamma.gamma) gamma_sup = std::max(gamma_sup, std::abs(w));
    if (gamma_sup == 0.0) return ranking;
    return ranking - lambda * std::abs(gamma_value(gamma, c_vector(cells))) / gamma_sup;
}

double l_big_lambda_criterion(const CellScores& cells, const RocPenaltyConfig& penalty) {
    EmpiricalCdf h(cells.pooled_neg());
    EmpiricalCdf g(cells.pooled_pos());
    double value = auc(h, g);
    for (std::size_t k = 0; k < penalty.m_h(); ++k)
        value -= penalty.lambda_h[k] *
                 std::abs(delta(CdfFamily::H, cells, penalty.alpha_h[k]));
    for (std::size_t k = 0; k < penalty.m_g(); ++k)
        value -= penalty.lambda_g[k] *
                 std::abs(delta(CdfFamily::G, cells, penalty.alpha_g[k]));
    return value;
}

}  // namespace fairrank
