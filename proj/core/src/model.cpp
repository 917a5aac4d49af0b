#include "fairrank/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "fairrank/error.hpp"
#include "fairrank/rng.hpp"

namespace fairrank {

MlpScorer::MlpScorer(int depth, int input_dim, std::uint64_t seed)
    : MlpScorer(depth, input_dim, input_dim, seed) {}

MlpScorer::MlpScorer(int depth, int input_dim, int hidden_width, std::uint64_t seed)
    : depth_(depth), input_dim_(input_dim), hidden_width_(hidden_width) {
    if (depth < 0) throw ConfigError("network depth must be nonnegative");
    if (input_dim < 1) throw ConfigError("input dimension must be at least 1");
    if (hidden_width < 1) throw ConfigError("hidden width must be at least 1");
    build_layout();

    Rng rng(seed);
    for (const auto& layer : layers_) {
        const std::size_t n_weights = static_cast<std::size_t>(layer.in) * layer.out;
        for (std::size_t i = 0; i < n_weights; ++i)
            params_[layer.weight_offset + i] = 0.01 * rng.normal();
        // biases stay zero
    }
}

void MlpScorer::build_layout() {
    std::size_t offset = 0;
    for (int l = 0; l < depth_; ++l) {
        LayerShape shape;
        shape.in = l == 0 ? input_dim_ : hidden_width_;
        shape.out = hidden_width_;
        shape.weight_offset = offset;
        offset += static_cast<std::size_t>(shape.in) * shape.out;
        shape.bias_offset = offset;
        offset += shape.out;
        layers_.push_back(shape);
    }
    LayerShape out_layer;
    out_layer.in = depth_ == 0 ? input_dim_ : hidden_width_;
    out_layer.out = 1;
    out_layer.weight_offset = offset;
    offset += out_layer.in;
    out_layer.bias_offset = offset;
    offset += 1;
    layers_.push_back(out_layer);
    params_.assign(offset, 0.0);
}

void MlpScorer::set_running_stats(double mean, double stddev) {
    run_mean_ = mean;
    run_std_ = std::max(stddev, kSigmaFloor);
}

MlpScorer::ForwardCache MlpScorer::forward(std::span<const double> X, std::size_t rows,
                                           RunMode mode) const {
    if (X.size() != rows * static_cast<std::size_t>(input_dim_))
        throw ShapeError("input batch size is not rows * input_dim");
    ForwardCache cache;
    cache.rows = rows;
    cache.mode = mode;

    std::vector<double> current(X.begin(), X.end());
    for (int l = 0; l < depth_; ++l) {
        const auto& shape = layers_[l];
        cache.activations.push_back(current);
        std::vector<double> pre(rows * static_cast<std::size_t>(shape.out));
        for (std::size_t r = 0; r < rows; ++r) {
            const double* x = current.data() + r * shape.in;
            for (int o = 0; o < shape.out; ++o) {
                const double* w = params_.data() + shape.weight_offset +
                                  static_cast<std::size_t>(o) * shape.in;
                double acc = params_[shape.bias_offset + o];
                for (int i = 0; i < shape.in; ++i) acc += w[i] * x[i];
                pre[r * shape.out + o] = acc;
            }
        }
        cache.pre_acts.push_back(pre);
        for (double& v : pre) v = std::max(0.0, v);
        current = std::move(pre);
    }

    cache.activations.push_back(current);
    const auto& out = layers_.back();
    cache.pre_norm.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const double* x = cache.activations.back().data() + r * out.in;
        const double* w = params_.data() + out.weight_offset;
        double acc = params_[out.bias_offset];
        for (int i = 0; i < out.in; ++i) acc += w[i] * x[i];
        cache.pre_norm[r] = acc;
    }

    cache.scores.resize(rows);
    if (mode == RunMode::Train) {
        double mean = 0.0;
        for (double y : cache.pre_norm) mean += y;
        mean /= static_cast<double>(rows);
        double var = 0.0;
        for (double y : cache.pre_norm) var += (y - mean) * (y - mean);
        var /= static_cast<double>(rows);  // biased
        const double sigma = std::sqrt(var);
        cache.batch_mean = mean;
        cache.sigma_floored = sigma < kSigmaFloor;
        cache.batch_sigma = std::max(sigma, kSigmaFloor);
        for (std::size_t r = 0; r < rows; ++r)
            cache.scores[r] = (cache.pre_norm[r] - mean) / cache.batch_sigma;
    } else {
        for (std::size_t r = 0; r < rows; ++r)
            cache.scores[r] = (cache.pre_norm[r] - run_mean_) / run_std_;
    }
    return cache;
}

std::vector<double> MlpScorer::forward_batch(std::span<const double> X, std::size_t rows,
                                             RunMode mode) {
    ForwardCache cache = forward(X, rows, mode);
    if (mode == RunMode::Train) commit_batch_stats(cache);
    return std::move(cache.scores);
}

void MlpScorer::commit_batch_stats(const ForwardCache& cache) {
    commit_batch_stats(cache.batch_mean, cache.batch_sigma);
}

void MlpScorer::commit_batch_stats(double batch_mean, double batch_sigma) {
    run_mean_ = bn_momentum * run_mean_ + (1.0 - bn_momentum) * batch_mean;
    run_std_ =
        std::max(bn_momentum * run_std_ + (1.0 - bn_momentum) * batch_sigma, kSigmaFloor);
}

void MlpScorer::backward(const ForwardCache& cache, std::span<const double> dscore,
                         std::span<double> grad) const {
    const std::size_t rows = cache.rows;
    if (dscore.size() != rows) throw ShapeError("dscore length does not match cached batch");
    if (grad.size() != params_.size()) throw ShapeError("gradient buffer has wrong length");

    // Through the output normalization.
    std::vector<double> dy(rows);
    if (cache.mode == RunMode::Train) {
        const double n = static_cast<double>(rows);
        double g_mean = 0.0, gs_mean = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            g_mean += dscore[r];
            gs_mean += dscore[r] * cache.scores[r];
        }
        g_mean /= n;
        gs_mean /= n;
        for (std::size_t r = 0; r < rows; ++r) {
            // Batch statistics are functions of the batch; when the sigma
            // floor is active the variance path is flat.
            double v = dscore[r] - g_mean;
            if (!cache.sigma_floored) v -= cache.scores[r] * gs_mean;
            dy[r] = v / cache.batch_sigma;
        }
    } else {
        for (std::size_t r = 0; r < rows; ++r) dy[r] = dscore[r] / run_std_;
    }

    // Output linear layer.
    const auto& out = layers_.back();
    std::vector<double> dcurrent(rows * static_cast<std::size_t>(out.in), 0.0);
    {
        const auto& acts = cache.activations.back();
        const double* w = params_.data() + out.weight_offset;
        for (std::size_t r = 0; r < rows; ++r) {
            const double* x = acts.data() + r * out.in;
            for (int i = 0; i < out.in; ++i) {
                grad[out.weight_offset + i] += dy[r] * x[i];
                dcurrent[r * out.in + i] = dy[r] * w[i];
            }
            grad[out.bias_offset] += dy[r];
        }
    }

    // Hidden layers, last to first.
    for (int l = depth_ - 1; l >= 0; --l) {
        const auto& shape = layers_[l];
        const auto& acts = cache.activations[l];
        const auto& pre = cache.pre_acts[l];
        std::vector<double> dprev(rows * static_cast<std::size_t>(shape.in), 0.0);
        for (std::size_t r = 0; r < rows; ++r) {
            const double* x = acts.data() + r * shape.in;
            for (int o = 0; o < shape.out; ++o) {
                if (pre[r * shape.out + o] <= 0.0) continue;  // ReLU gate
                const double dz = dcurrent[r * shape.out + o];
                double* gw = grad.data() + shape.weight_offset +
                             static_cast<std::size_t>(o) * shape.in;
                const double* w = params_.data() + shape.weight_offset +
                                  static_cast<std::size_t>(o) * shape.in;
                for (int i = 0; i < shape.in; ++i) {
                    gw[i] += dz * x[i];
                    dprev[r * shape.in + i] += dz * w[i];
                }
                grad[shape.bias_offset + o] += dz;
            }
        }
        dcurrent = std::move(dprev);
    }
}

double MlpScorer::weight_squared_norm() const {
    double acc = 0.0;
    for (const auto& layer : layers_) {
        const std::size_t n_weights = static_cast<std::size_t>(layer.in) * layer.out;
        for (std::size_t i = 0; i < n_weights; ++i) {
            const double w = params_[layer.weight_offset + i];
            acc += w * w;
        }
    }
    return acc;
}

void MlpScorer::add_ridge_gradient(double lambda_reg, std::span<double> grad) const {
    if (grad.size() != params_.size()) throw ShapeError("gradient buffer has wrong length");
    for (const auto& layer : layers_) {
        const std::size_t n_weights = static_cast<std::size_t>(layer.in) * layer.out;
        for (std::size_t i = 0; i < n_weights; ++i)
            grad[layer.weight_offset + i] += lambda_reg * params_[layer.weight_offset + i];
    }
}

std::vector<double> MlpScorer::output_weights() const {
    const auto& out = layers_.back();
    return std::vector<double>(params_.begin() + static_cast<long>(out.weight_offset),
                               params_.begin() + static_cast<long>(out.weight_offset + out.in));
}

std::string checkpoint_to_json(const MlpScorer& model) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["kind"] = "mlp_scorer";
    j["depth"] = model.depth();
    j["input_dim"] = model.input_dim();
    j["hidden_width"] = model.hidden_width();
    j["bn_momentum"] = model.bn_momentum;
    j["run_mean"] = model.run_mean();
    j["run_std"] = model.run_std();
    j["params"] = std::vector<double>(model.params().begin(), model.params().end());
    return j.dump(2);
}

MlpScorer checkpoint_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
        throw ConfigError("unsupported checkpoint schema version");
    if (j.value("kind", "") != std::string("mlp_scorer"))
        throw ConfigError("checkpoint does not hold an mlp_scorer");
    MlpScorer model(j["depth"].get<int>(), j["input_dim"].get<int>(),
                    j["hidden_width"].get<int>(), 0);
    auto stored = j["params"].get<std::vector<double>>();
    if (stored.size() != model.parameter_count())
        throw ConfigError("checkpoint parameter count mismatch");
    std::copy(stored.begin(), stored.end(), model.params().begin());
    model.bn_momentum = j["bn_momentum"].get<double>();
    model.set_running_stats(j["run_mean"].get<double>(), j["run_std"].get<double>());
    return model;
}

void save_checkpoint(const MlpScorer& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open checkpoint file for writing: " + path);
    out << checkpoint_to_json(model) << '\n';
    if (!out) throw ConfigError("failed writing checkpoint: " + path);
}

MlpScorer load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open checkpoint file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return checkpoint_from_json(text);
}

}  // namespace fairrank
