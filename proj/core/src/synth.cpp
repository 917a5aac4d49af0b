#include "fairrank/synth.hpp"

#include <cmath>

#include "fairrank/error.hpp"
#include "fairrank/rng.hpp"

namespace fairrank {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check(std::size_t n, double q1) {
    if (n < 1) throw ConfigError("generator needs n >= 1");
    if (!(q1 >= 0.0 && q1 <= 1.0)) throw ConfigError("q1 must lie in [0,1]");
}
}  // namespace

Dataset gen_square(const SquareConfig& cfg) {
    check(cfg.n, cfg.q1);
    Rng rng(cfg.seed);
    std::vector<LabeledSample> samples;
    samples.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        const int z = rng.bernoulli(cfg.q1) ? 1 : 0;
        const double x1 = rng.uniform01();
        const double x2 = rng.uniform01();
        const double eta = z == 0 ? x1 : x2;
        const int y = rng.bernoulli(eta) ? 1 : -1;
        samples.push_back({{x1, x2}, y, z});
    }
    return Dataset(std::move(samples), 2);
}

Dataset gen_disk(const DiskConfig& cfg) {
    check(cfg.n, cfg.q1);
    Rng rng(cfg.seed);
    std::vector<LabeledSample> samples;
    samples.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        const int z = rng.bernoulli(cfg.q1) ? 1 : 0;
        const double theta = 0.5 * kPi * rng.uniform01();
        const double u = rng.uniform01();
        // Area-uniform radius: r^2 uniform on [0, 1/4] resp. [1/4, 1].
        const double r = z == 0 ? 0.5 * std::sqrt(u) : std::sqrt(0.25 + 0.75 * u);
        const double x1 = r * std::cos(theta);
        const double x2 = r * std::sin(theta);
        const double eta = 2.0 * theta / kPi;  // = (2/pi) * arctan(x2/x1)
        const int y = rng.bernoulli(eta) ? 1 : -1;
        samples.push_back({{x1, x2}, y, z});
    }
    return Dataset(std::move(samples), 2);
}

double square_family_score(double c, double x1, double x2) { return c * x1 + (1.0 - c) * x2; }

double disk_family_score(double c, double x1, double x2) { return -c * x1 + (1.0 - c) * x2; }

double square_family_c(double w1, double w2) {
    // (w1, w2) ~ k * (c, 1-c) with k > 0.
    const double denom = w1 + w2;
    if (denom == 0.0) throw StatError("weight vector cannot be mapped to the score family");
    return w1 / denom;
}

double disk_family_c(double w1, double w2) {
    // (w1, w2) ~ k * (-c, 1-c) with k > 0.
    const double denom = w2 - w1;
    if (denom == 0.0) throw StatError("weight vector cannot be mapped to the score family");
    return -w1 / denom;
}

}  // namespace fairrank
