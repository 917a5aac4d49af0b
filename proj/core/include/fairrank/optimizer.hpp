#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fairrank {

// ADAM with bias correction and the canonical defaults. Moment accumulators
// are shaped like the flat parameter vector.
struct AdamState {
    explicit AdamState(std::size_t n_params)
        : m(n_params, 0.0), v(n_params, 0.0) {}

    std::int64_t t = 0;
    std::vector<double> m;
    std::vector<double> v;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// One in-place update. Throws TrainError on a non-finite gradient entry.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state);

std::string adam_state_to_json(const AdamState& state);
AdamState adam_state_from_json(const std::string& text);

struct GradCheckReport {
    double max_rel_error = 0.0;
    std::size_t worst_index = 0;
    double worst_analytic = 0.0;
    double worst_numeric = 0.0;
    std::size_t checked = 0;  // coordinates above the gradient-magnitude cutoff
};

// Central-difference check of an analytic gradient. Coordinates whose
// analytic and numeric magnitudes both fall below min_grad are skipped.
GradCheckReport grad_check(const std::function<double(std::span<const double>)>& loss,
                           std::span<const double> analytic_grad,
                           std::span<const double> params, double step,
                           double min_grad = 1e-8);

}  // namespace fairrank
