#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairrank/constraints.hpp"
#include "fairrank/dataset.hpp"
#include "fairrank/losses.hpp"
#include "fairrank/model.hpp"

namespace fairrank {

// Hyperparameters shared by both training loops. Defaults follow the
// experimental setup the synthetic results were produced with.
struct TrainConfig {
    long n_iter = 10000;
    int batch_size = 100;          // N, sampled with replacement
    int pair_budget = 100;         // B pairs per soft AUC term
    long val_pair_budget = 100000; // B_v pairs per validation AUC estimate
    int adapt_every = 50;          // n_adapt
    double dc = 0.01;              // adaptation step for the sign parameters
    double lambda_reg = 0.01;
    double temperature = 1.0;      // logistic slope multiplier
    double bn_momentum = 0.99;
    int depth = 0;                 // D; 0 = linear scoring function
    int hidden_width = 0;          // 0 = input dimension
    std::uint64_t seed = 0;
};

struct AucTrainConfig : TrainConfig {
    double lambda = 0.0;
};

struct RocTrainConfig : TrainConfig {
    RocPenaltyConfig penalty;
    double dt = 0.001;  // threshold drift step
};

// One row per adaptation step; columns depend on the training mode.
struct TrainLog {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void write_csv(const std::string& path) const;
    std::string to_csv() const;
};

struct TrainResult {
    MlpScorer model;
    TrainLog log;
};

// Stochastic soft-AUC maximization under an AUC-based fairness penalty with
// the adaptive sign parameter c. Every adapt_every iterations, Gamma^T C is
// estimated on the validation set with hard incomplete AUCs (val_pair_budget
// pairs per AUC) and c moves by dc toward the violation's sign.
TrainResult train_auc(const Dataset& train, const Dataset& validation,
                      const GammaConstraint& gamma, const AucTrainConfig& cfg);

// Same loop under pointwise constraints. Every adapt_every iterations, exact
// empirical cell CDFs of the validation scores decide, per constraint,
// whether to drift the threshold t toward the target level or to move the
// sign parameter c toward the group gap.
TrainResult train_roc(const Dataset& train, const Dataset& validation,
                      const RocTrainConfig& cfg);

// One adaptation decision for a pointwise constraint, exposed for direct
// testing. cdf0/cdf1 are exact validation CDF values of the two group cells
// at the current threshold. Equilibrium sits where both survival functions
// equal alpha, i.e. where Delta_{F,alpha} vanishes.
struct RocAdaptStep {
    double c = 0.0, t = 0.0;
    double delta = 0.0, sigma = 0.0;
    bool moved_threshold = false;
};
RocAdaptStep roc_adapt_step(double cdf0_at_t, double cdf1_at_t, double alpha, double c,
                            double t, double dc, double dt);

// Eval-mode scores over a whole dataset.
std::vector<double> score_dataset(const MlpScorer& model, const Dataset& data);

// Penalized validation criteria used for model selection across sweeps
// (exact empirical metrics, no sampling).
double l_lambda_criterion(const CellScores& cells, const GammaConstraint& gamma, double lambda);
double l_big_lambda_criterion(const CellScores& cells, const RocPenaltyConfig& penalty);

}  // namespace fairrank
