#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fairrank {

enum class RunMode { Train, Eval };

// Scoring function s: R^d -> R. A stack of `depth` fully connected ReLU
// layers of width `hidden_width` followed by a linear output unit whose
// scalar output is batch-normalized with fixed affine (gamma=1, beta=0).
// In train mode the normalization uses the biased statistics of the current
// batch; in eval mode it uses the running averages.
//
// Parameters live in one flat vector (weights row-major, then bias, layer by
// layer) so the optimizer and the finite-difference checks can treat the
// model as a plain coordinate vector.
class MlpScorer {
public:
    MlpScorer(int depth, int input_dim, std::uint64_t seed);
    MlpScorer(int depth, int input_dim, int hidden_width, std::uint64_t seed);

    int depth() const { return depth_; }
    int input_dim() const { return input_dim_; }
    int hidden_width() const { return hidden_width_; }

    std::size_t parameter_count() const { return params_.size(); }
    std::span<double> params() { return params_; }
    std::span<const double> params() const { return params_; }

    double run_mean() const { return run_mean_; }
    double run_std() const { return run_std_; }
    void set_running_stats(double mean, double stddev);

    double bn_momentum = 0.99;  // running-average momentum per update

    // Activations and batch statistics cached by a forward pass, consumed by
    // backward(). `activations[l]` is the input of layer l; `pre_acts[l]`
    // the pre-ReLU values of hidden layer l.
    struct ForwardCache {
        std::size_t rows = 0;
        RunMode mode = RunMode::Train;
        std::vector<std::vector<double>> activations;
        std::vector<std::vector<double>> pre_acts;
        std::vector<double> pre_norm;  // scalar network output per row
        std::vector<double> scores;    // normalized output per row
        double batch_mean = 0.0;
        double batch_sigma = 1.0;      // max(sqrt(biased variance), 1e-6)
        bool sigma_floored = false;
    };

    // Side-effect-free forward pass. X is row-major with `rows` rows of
    // input_dim entries.
    ForwardCache forward(std::span<const double> X, std::size_t rows, RunMode mode) const;

    // Forward pass that also updates the running statistics in train mode.
    std::vector<double> forward_batch(std::span<const double> X, std::size_t rows, RunMode mode);

    void commit_batch_stats(const ForwardCache& cache);
    void commit_batch_stats(double batch_mean, double batch_sigma);

    // Accumulates dLoss/dparams into grad (flat layout) given dLoss/dscore.
    // Train-mode caches differentiate through the batch statistics.
    void backward(const ForwardCache& cache, std::span<const double> dscore,
                  std::span<double> grad) const;

    double weight_squared_norm() const;  // sum of squared weights, biases excluded
    void add_ridge_gradient(double lambda_reg, std::span<double> grad) const;

    // Final-layer weight vector (useful for linear models, depth == 0).
    std::vector<double> output_weights() const;

    static constexpr double kSigmaFloor = 1e-6;

private:
    struct LayerShape {
        int in = 0, out = 0;
        std::size_t weight_offset = 0, bias_offset = 0;
    };

    int depth_, input_dim_, hidden_width_;
    std::vector<LayerShape> layers_;  // depth_ hidden layers + output layer
    std::vector<double> params_;
    double run_mean_ = 0.0;
    double run_std_ = 1.0;

    void build_layout();
};

// Versioned JSON checkpoint; doubles round-trip exactly, so reloaded models
// are bit-identical in eval mode.
std::string checkpoint_to_json(const MlpScorer& model);
MlpScorer checkpoint_from_json(const std::string& text);
void save_checkpoint(const MlpScorer& model, const std::string& path);
MlpScorer load_checkpoint(const std::string& path);

}  // namespace fairrank
