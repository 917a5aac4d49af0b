#include "fairrank/optimizer.hpp"

#include <cmath>

#include <json.hpp>

#include "fairrank/error.hpp"

namespace fairrank {

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state) {
    if (params.size() != grads.size() || params.size() != state.m.size())
        throw ShapeError("adam_step: parameter, gradient and state sizes differ");
    for (double g : grads)
        if (!std::isfinite(g)) throw TrainError("non-finite gradient entry");

    state.t += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grads[i] * grads[i];
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
}

std::string adam_state_to_json(const AdamState& state) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["t"] = state.t;
    j["m"] = state.m;
    j["v"] = state.v;
    j["lr"] = state.lr;
    j["beta1"] = state.beta1;
    j["beta2"] = state.beta2;
    j["eps"] = state.eps;
    return j.dump(2);
}

AdamState adam_state_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
        throw ConfigError("unsupported optimizer state schema version");
    auto m = j["m"].get<std::vector<double>>();
    AdamState state(m.size());
    state.m = std::move(m);
    state.v = j["v"].get<std::vector<double>>();
    if (state.v.size() != state.m.size())
        throw ConfigError("optimizer state moment sizes differ");
    state.t = j["t"].get<std::int64_t>();
    state.lr = j["lr"].get<double>();
    state.beta1 = j["beta1"].get<double>();
    state.beta2 = j["beta2"].get<double>();
    state.eps = j["eps"].get<double>();
    return state;
}

GradCheckReport grad_check(const std::function<double(std::span<const double>)>& loss,
                           std::span<const double> analytic_grad,
                           std::span<const double> params, double step, double min_grad) {
    if (analytic_grad.size() != params.size())
        throw ShapeError("grad_check: gradient and parameter sizes differ");

    std::vector<double> theta(params.begin(), params.end());
    GradCheckReport report;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double saved = theta[i];
        theta[i] = saved + step;
        const double up = loss(theta);
        theta[i] = saved - step;
        const double down = loss(theta);
        theta[i] = saved;

        const double numeric = (up - down) / (2.0 * step);
        const double analytic = analytic_grad[i];
        if (std::abs(analytic) <= min_grad && std::abs(numeric) <= min_grad) continue;
        const double rel =
            std::abs(analytic - numeric) / std::max(std::abs(analytic), std::abs(numeric));
        ++report.checked;
        if (rel > report.max_rel_error) {
            report.max_rel_error = rel;
            report.worst_index = i;
            report.worst_analytic = analytic;
            report.worst_numeric = numeric;
        }
    }
    return report;
}

}  // namespace fairrank
