#include "fairrank/losses.hpp"

#include <cmath>
#include <string>

#include "fairrank/error.hpp"

namespace fairrank {

Batch make_batch(const Dataset& data, std::span<const std::size_t> indices) {
    Batch batch;
    batch.rows = indices.size();
    batch.dim = data.dim();
    batch.X.reserve(batch.rows * batch.dim);
    batch.labels.reserve(batch.rows);
    batch.groups.reserve(batch.rows);
    for (std::size_t i : indices) {
        const auto& s = data[i];
        batch.X.insert(batch.X.end(), s.features.begin(), s.features.end());
        batch.labels.push_back(s.label);
        batch.groups.push_back(s.group);
    }
    return batch;
}

double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

namespace {

struct CellIndices {
    std::vector<std::size_t> neg[2], pos[2];
    std::vector<std::size_t> all_neg, all_pos;

    static CellIndices from(std::span<const int> labels, std::span<const int> groups) {
        CellIndices idx;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] > 0) {
                idx.pos[groups[i]].push_back(i);
                idx.all_pos.push_back(i);
            } else {
                idx.neg[groups[i]].push_back(i);
                idx.all_neg.push_back(i);
            }
        }
        return idx;
    }
};

// Soft AUC_{A,B} over all |A|*|B| cross pairs: mean of sigma(2*tau*(s_b - s_a)).
// If dscore != nullptr, coeff * d/ds is accumulated into it.
double soft_pair_auc_full(std::span<const double> s, const std::vector<std::size_t>& a,
                          const std::vector<std::size_t>& b, double tau, double* dscore,
                          double coeff) {
    double total = 0.0;
    const double norm = 1.0 / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    for (std::size_t ia : a) {
        for (std::size_t ib : b) {
            const double k = logistic(2.0 * tau * (s[ib] - s[ia]));
            total += k;
            if (dscore != nullptr) {
                const double d = coeff * norm * 2.0 * tau * k * (1.0 - k);
                dscore[ib] += d;
                dscore[ia] -= d;
            }
        }
    }
    return total * norm;
}

// Incomplete variant: `budget` pairs uniform with replacement.
double soft_pair_auc_incomplete(std::span<const double> s, const std::vector<std::size_t>& a,
                                const std::vector<std::size_t>& b, int budget, double tau,
                                Rng& rng, double* dscore, double coeff) {
    double total = 0.0;
    const double norm = 1.0 / static_cast<double>(budget);
    for (int j = 0; j < budget; ++j) {
        const std::size_t ia = a[rng.uniform_below(a.size())];
        const std::size_t ib = b[rng.uniform_below(b.size())];
        const double k = logistic(2.0 * tau * (s[ib] - s[ia]));
        total += k;
        if (dscore != nullptr) {
            const double d = coeff * norm * 2.0 * tau * k * (1.0 - k);
            dscore[ib] += d;
            dscore[ia] -= d;
        }
    }
    return total * norm;
}

// Relaxed CDF of one cell at threshold t: mean of sigma(tau*(t - s_i)).
double soft_cell_cdf(std::span<const double> s, const std::vector<std::size_t>& cell, double t,
                     double tau, double* dscore, double coeff) {
    double total = 0.0;
    const double norm = 1.0 / static_cast<double>(cell.size());
    for (std::size_t i : cell) {
        const double k = logistic(tau * (t - s[i]));
        total += k;
        if (dscore != nullptr) dscore[i] -= coeff * norm * tau * k * (1.0 - k);
    }
    return total * norm;
}

[[noreturn]] void throw_empty(const char* cell, const char* where) {
    throw StatError(std::string("cell ") + cell + " is empty in the batch; " + where +
                    " undefined");
}

}  // namespace

double soft_auc_full(std::span<const double> scores, std::span<const int> labels,
                     double temperature) {
    const std::vector<int> zeros(labels.size(), 0);  // groups irrelevant here
    auto idx = CellIndices::from(labels, zeros);
    if (idx.all_pos.empty() || idx.all_neg.empty())
        throw StatError("soft AUC undefined on a single-class batch");
    return soft_pair_auc_full(scores, idx.all_neg, idx.all_pos, temperature, nullptr, 0.0);
}

double soft_auc_incomplete(std::span<const double> scores, std::span<const int> labels,
                           int pair_budget, Rng& rng, double temperature) {
    if (pair_budget < 1) throw ConfigError("pair budget must be positive");
    const std::vector<int> zeros(labels.size(), 0);
    auto idx = CellIndices::from(labels, zeros);
    if (idx.all_pos.empty() || idx.all_neg.empty())
        throw StatError("soft AUC undefined on a single-class batch");
    return soft_pair_auc_incomplete(scores, idx.all_neg, idx.all_pos, pair_budget, temperature,
                                    rng, nullptr, 0.0);
}

double soft_group_cdf(CdfFamily family, int z, std::span<const double> scores,
                      std::span<const int> labels, std::span<const int> groups, double t,
                      double temperature) {
    auto idx = CellIndices::from(labels, groups);
    const auto& cell = family == CdfFamily::H ? idx.neg[z] : idx.pos[z];
    if (cell.empty())
        throw_empty(family == CdfFamily::H ? (z == 0 ? "H(0)" : "H(1)")
                                           : (z == 0 ? "G(0)" : "G(1)"),
                    "soft group cdf");
    return soft_cell_cdf(scores, cell, t, temperature, nullptr, 0.0);
}

namespace {

struct CompositeContext {
    const MlpScorer& model;
    const Batch& batch;
    MlpScorer::ForwardCache cache;
    CellIndices idx;
    std::vector<double> dscore;
    LossBreakdown out;

    CompositeContext(const MlpScorer& m, const Batch& b)
        : model(m),
          batch(b),
          cache(m.forward(b.X, b.rows, RunMode::Train)),
          idx(CellIndices::from(b.labels, b.groups)),
          dscore(b.rows, 0.0) {
        out.batch_mean = cache.batch_mean;
        out.batch_sigma = cache.batch_sigma;
    }

    // 1 - incomplete soft AUC over the whole batch.
    void add_ranking_term(int pair_budget, Rng& rng, MissingCellPolicy policy, double tau) {
        if (idx.all_pos.empty() || idx.all_neg.empty()) {
            if (policy == MissingCellPolicy::Throw)
                throw StatError("single-class batch; ranking soft AUC undefined");
            ++out.skipped_terms;
            return;
        }
        const double v = soft_pair_auc_incomplete(cache.scores, idx.all_neg, idx.all_pos,
                                                  pair_budget, tau, rng, dscore.data(), -1.0);
        out.ranking_term = 1.0 - v;
    }

    void finish(double lambda_reg) {
        out.ridge_term = 0.5 * lambda_reg * model.weight_squared_norm();
        out.value = out.ranking_term + out.fairness_term + out.ridge_term;
        out.grad.assign(model.parameter_count(), 0.0);
        model.backward(cache, dscore, out.grad);
        model.add_ridge_gradient(lambda_reg, out.grad);
    }
};

const char* kCellNames[4] = {"H(0)", "H(1)", "G(0)", "G(1)"};

}  // namespace

LossBreakdown loss_auc_constrained(const MlpScorer& model, const Batch& batch,
                                   const GammaConstraint& gamma, double lambda, double c,
                                   double lambda_reg, int pair_budget, Rng& rng,
                                   MissingCellPolicy policy, double temperature) {
    if (pair_budget < 1) throw ConfigError("pair budget must be positive");
    CompositeContext ctx(model, batch);
    ctx.add_ranking_term(pair_budget, rng, policy, temperature);

    // Soft incomplete C components: per component, each AUC draws its own
    // pair budget. (a, b) are the (h-role, g-role) cells of each AUC
    // (0:H(0) 1:H(1) 2:G(0) 3:G(1)); sign is the AUC's sign inside the
    // component and offset its constant part.
    struct AucRef {
        int a, b;
        double sign;
    };
    struct Component {
        double offset;
        AucRef aucs[2];
        int n_aucs;
    };
    static const Component kComponents[5] = {
        {-0.5, {{0, 1, 1.0}, {0, 0, 0.0}}, 1},   // C1 = AUC(H0,H1) - 1/2
        {0.5, {{2, 3, -1.0}, {0, 0, 0.0}}, 1},   // C2 = 1/2 - AUC(G0,G1)
        {0.0, {{0, 2, 1.0}, {0, 3, -1.0}}, 2},   // C3 = AUC(H0,G0) - AUC(H0,G1)
        {0.0, {{0, 3, 1.0}, {1, 2, -1.0}}, 2},   // C4 = AUC(H0,G1) - AUC(H1,G0)
        {0.0, {{1, 2, 1.0}, {1, 3, -1.0}}, 2},   // C5 = AUC(H1,G0) - AUC(H1,G1)
    };

    const std::vector<std::size_t>* cells[4] = {&ctx.idx.neg[0], &ctx.idx.neg[1],
                                                &ctx.idx.pos[0], &ctx.idx.pos[1]};
    // Gamma is scaled to unit sup norm inside the penalty: the constraint
    // Gamma^T C = 0 is homogeneous, and at sup norm 1 the intra-group
    // instance reduces exactly to the plain difference of the two
    // within-group soft AUCs, which is the scale lambda is calibrated for.
    double gamma_sup = 0.0;
    for (double w : gamma.gamma) gamma_sup = std::max(gamma_sup, std::abs(w));
    const double scale = gamma_sup > 0.0 ? lambda * c / gamma_sup : 0.0;

    double fairness = 0.0;
    for (int l = 0; l < 5 && gamma_sup > 0.0; ++l) {
        const double w = gamma.gamma[l];
        if (w == 0.0) continue;
        const auto& comp = kComponents[l];
        bool missing = false;
        for (int k = 0; k < comp.n_aucs && !missing; ++k) {
            const auto& ref = comp.aucs[k];
            for (int cell : {ref.a, ref.b}) {
                if (cells[cell]->empty()) {
                    if (policy == MissingCellPolicy::Throw)
                        throw_empty(kCellNames[cell], "constrained loss term");
                    missing = true;
                }
            }
        }
        if (missing) {
            ++ctx.out.skipped_terms;
            continue;
        }
        double component = comp.offset;
        for (int k = 0; k < comp.n_aucs; ++k) {
            const auto& ref = comp.aucs[k];
            component += ref.sign * soft_pair_auc_incomplete(
                                        ctx.cache.scores, *cells[ref.a], *cells[ref.b],
                                        pair_budget, temperature, rng, ctx.dscore.data(),
                                        scale * w * ref.sign);
        }
        fairness += scale * w * component;
    }
    ctx.out.fairness_term = fairness;
    ctx.finish(lambda_reg);
    return std::move(ctx.out);
}

void RocPenaltyConfig::validate() const {
    if (alpha_h.size() != lambda_h.size() || alpha_g.size() != lambda_g.size())
        throw ConfigError("constraint grid and weight vectors must have equal length");
    for (const auto* grid : {&alpha_h, &alpha_g}) {
        for (std::size_t k = 0; k < grid->size(); ++k) {
            const double a = (*grid)[k];
            if (!(a >= 0.0 && a <= 1.0))
                throw ConfigError("constraint abscissa outside [0,1]");
            if (k > 0 && !((*grid)[k - 1] < a))
                throw ConfigError("constraint abscissae must be strictly increasing");
        }
    }
    for (const auto* weights : {&lambda_h, &lambda_g})
        for (double w : *weights)
            if (!(w >= 0.0)) throw ConfigError("constraint weights must be nonnegative");
}

LossBreakdown loss_roc_constrained(const MlpScorer& model, const Batch& batch,
                                   const RocPenaltyConfig& penalty,
                                   const AdaptiveParams& adaptive, double lambda_reg,
                                   int pair_budget, Rng& rng, MissingCellPolicy policy,
                                   double temperature) {
    if (pair_budget < 1) throw ConfigError("pair budget must be positive");
    penalty.validate();
    if (adaptive.c_h.size() != penalty.m_h() || adaptive.t_h.size() != penalty.m_h() ||
        adaptive.c_g.size() != penalty.m_g() || adaptive.t_g.size() != penalty.m_g())
        throw ConfigError("adaptive parameter vectors do not match the constraint grids");

    CompositeContext ctx(model, batch);
    ctx.add_ranking_term(pair_budget, rng, policy, temperature);

    double fairness = 0.0;
    for (int family = 0; family < 2; ++family) {
        const bool is_h = family == 0;
        const auto& weights = is_h ? penalty.lambda_h : penalty.lambda_g;
        const auto& cs = is_h ? adaptive.c_h : adaptive.c_g;
        const auto& ts = is_h ? adaptive.t_h : adaptive.t_g;
        if (weights.empty()) continue;
        const auto& cell0 = is_h ? ctx.idx.neg[0] : ctx.idx.pos[0];
        const auto& cell1 = is_h ? ctx.idx.neg[1] : ctx.idx.pos[1];
        const double m_norm = 1.0 / static_cast<double>(weights.size());
        for (std::size_t k = 0; k < weights.size(); ++k) {
            if (cell0.empty() || cell1.empty()) {
                if (policy == MissingCellPolicy::Throw)
                    throw_empty(cell0.empty() ? (is_h ? "H(0)" : "G(0)")
                                              : (is_h ? "H(1)" : "G(1)"),
                                "pointwise constraint loss");
                ++ctx.out.skipped_terms;
                continue;
            }
            const double coeff = m_norm * weights[k] * cs[k];
            const double f0 = soft_cell_cdf(ctx.cache.scores, cell0, ts[k], temperature,
                                            ctx.dscore.data(), coeff);
            const double f1 = soft_cell_cdf(ctx.cache.scores, cell1, ts[k], temperature,
                                            ctx.dscore.data(), -coeff);
            fairness += coeff * (f0 - f1);
        }
    }
    ctx.out.fairness_term = fairness;
    ctx.finish(lambda_reg);
    return std::move(ctx.out);
}

LossBreakdown soft_auc_full_loss(const MlpScorer& model, const Batch& batch,
                                 double temperature) {
    CompositeContext ctx(model, batch);
    if (ctx.idx.all_pos.empty() || ctx.idx.all_neg.empty())
        throw StatError("soft AUC undefined on a single-class batch");
    const double v = soft_pair_auc_full(ctx.cache.scores, ctx.idx.all_neg, ctx.idx.all_pos,
                                        temperature, ctx.dscore.data(), 1.0);
    ctx.out.ranking_term = v;
    ctx.finish(0.0);
    return std::move(ctx.out);
}

double hard_auc_incomplete(std::span<const double> a_sample, std::span<const double> b_sample,
                           long pair_budget, Rng& rng) {
    if (pair_budget < 1) throw ConfigError("pair budget must be positive");
    if (a_sample.empty() || b_sample.empty())
        throw StatError("incomplete AUC estimate over an empty sample");
    long twice_sum = 0;
    for (long j = 0; j < pair_budget; ++j) {
        const double sa = a_sample[rng.uniform_below(a_sample.size())];
        const double sb = b_sample[rng.uniform_below(b_sample.size())];
        if (sb > sa)
            twice_sum += 2;
        else if (sb == sa)
            twice_sum += 1;
    }
    return static_cast<double>(twice_sum) / static_cast<double>(2 * pair_budget);
}

double gamma_c_estimate(const GammaConstraint& gamma, const CellScores& cells,
                        long pair_budget, Rng& rng) {
    const std::vector<double>* samples[4] = {&cells.neg[0], &cells.neg[1], &cells.pos[0],
                                             &cells.pos[1]};
    auto est = [&](int a, int b) {
        return hard_auc_incomplete(*samples[a], *samples[b], pair_budget, rng);
    };
    double total = 0.0;
    if (gamma.gamma[0] != 0.0) total += gamma.gamma[0] * (est(0, 1) - 0.5);
    if (gamma.gamma[1] != 0.0) total += gamma.gamma[1] * (0.5 - est(2, 3));
    if (gamma.gamma[2] != 0.0) total += gamma.gamma[2] * (est(0, 2) - est(0, 3));
    if (gamma.gamma[3] != 0.0) total += gamma.gamma[3] * (est(0, 3) - est(1, 2));
    if (gamma.gamma[4] != 0.0) total += gamma.gamma[4] * (est(1, 2) - est(1, 3));
    return total;
}

}  // namespace fairrank
