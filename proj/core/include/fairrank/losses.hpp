#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fairrank/constraints.hpp"
#include "fairrank/dataset.hpp"
#include "fairrank/metrics.hpp"
#include "fairrank/model.hpp"
#include "fairrank/rng.hpp"

namespace fairrank {

// Row-major feature block plus labels and groups for one training batch.
struct Batch {
    std::vector<double> X;
    std::vector<int> labels;
    std::vector<int> groups;
    std::size_t rows = 0;
    std::size_t dim = 0;
};

Batch make_batch(const Dataset& data, std::span<const std::size_t> indices);

double logistic(double x);

// ---- Smooth surrogate primitives (values only) ----

// (1/N+N-) sum over cross-label pairs of sigma[(s_i - s_j)(y_i - y_j)].
double soft_auc_full(std::span<const double> scores, std::span<const int> labels,
                     double temperature = 1.0);

// Mean of the same kernel over `pair_budget` cross-label pairs drawn
// uniformly with replacement; unbiased for soft_auc_full.
double soft_auc_incomplete(std::span<const double> scores, std::span<const int> labels,
                           int pair_budget, Rng& rng, double temperature = 1.0);

// Relaxed cell CDF: mean over the (family, z) cell of sigma(t - s_i).
double soft_group_cdf(CdfFamily family, int z, std::span<const double> scores,
                      std::span<const int> labels, std::span<const int> groups, double t,
                      double temperature = 1.0);

// ---- Composite training objectives (value + parameter gradient) ----

enum class MissingCellPolicy { Throw, Skip };

// Thresholds and sign parameters steered by the trainer between gradient
// steps. `c` drives the AUC-based penalty; the vectors drive the pointwise
// penalties (one entry per constraint).
struct AdaptiveParams {
    double c = 0.0;
    std::vector<double> c_h, t_h;
    std::vector<double> c_g, t_g;
};

// Pointwise ROC penalty configuration: constraint abscissae (strictly
// increasing, in [0,1]) and nonnegative weights, per family.
struct RocPenaltyConfig {
    std::vector<double> alpha_h, lambda_h;
    std::vector<double> alpha_g, lambda_g;

    void validate() const;
    std::size_t m_h() const { return alpha_h.size(); }
    std::size_t m_g() const { return alpha_g.size(); }
};

struct LossBreakdown {
    double value = 0.0;
    double ranking_term = 0.0;   // 1 - soft AUC estimate
    double fairness_term = 0.0;  // penalty contribution
    double ridge_term = 0.0;
    std::vector<double> grad;    // flat model-parameter gradient
    double batch_mean = 0.0;     // output batch-norm statistics of this pass
    double batch_sigma = 1.0;
    int skipped_terms = 0;       // penalty/ranking terms dropped (Skip policy)
};

// (1 - softAUC^B) + lambda * c * Gamma^T C~(s) + (lambda_reg/2) ||W||^2,
// where every AUC inside C is replaced by its incomplete soft estimate with
// `pair_budget` pairs drawn per AUC term.
LossBreakdown loss_auc_constrained(const MlpScorer& model, const Batch& batch,
                                   const GammaConstraint& gamma, double lambda, double c,
                                   double lambda_reg, int pair_budget, Rng& rng,
                                   MissingCellPolicy policy = MissingCellPolicy::Throw,
                                   double temperature = 1.0);

// (1 - softAUC^B) + (1/m_H) sum_k lambda_H^k c_H^k (H~0(t_k) - H~1(t_k))
//                 + (1/m_G) sum_k lambda_G^k c_G^k (G~0(t_k) - G~1(t_k))
//                 + (lambda_reg/2) ||W||^2.
LossBreakdown loss_roc_constrained(const MlpScorer& model, const Batch& batch,
                                   const RocPenaltyConfig& penalty,
                                   const AdaptiveParams& adaptive, double lambda_reg,
                                   int pair_budget, Rng& rng,
                                   MissingCellPolicy policy = MissingCellPolicy::Throw,
                                   double temperature = 1.0);

// Full (non-sampled) soft AUC of the batch under the model, with gradient.
// Test utility for finite-difference checks.
LossBreakdown soft_auc_full_loss(const MlpScorer& model, const Batch& batch,
                                 double temperature = 1.0);

// ---- Incomplete hard estimators (validation statistics) ----

// AUC_{A,B} estimated from `pair_budget` uniform pairs, 1/0 kernel with ties
// counted 1/2.
double hard_auc_incomplete(std::span<const double> a_sample, std::span<const double> b_sample,
                           long pair_budget, Rng& rng);

// Gamma^T C(s) with every AUC replaced by a hard incomplete estimate
// (pair_budget pairs per AUC term). Components with zero weight are skipped.
double gamma_c_estimate(const GammaConstraint& gamma, const CellScores& cells,
                        long pair_budget, Rng& rng);

}  // namespace fairrank
