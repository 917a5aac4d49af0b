#include "fairrank/cdf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "fairrank/error.hpp"

namespace fairrank {

EmpiricalCdf::EmpiricalCdf(std::vector<double> scores) : sorted_(std::move(scores)) {
    if (sorted_.empty()) throw StatError("empirical cdf over an empty sample is undefined");
    for (double s : sorted_)
        if (std::isnan(s)) throw StatError("empirical cdf sample contains NaN");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double t) const {
    const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), t) - sorted_.begin();
    return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile level must lie in [0,1]");
    if (u == 0.0) return kNegInf;
    const auto n = static_cast<double>(sorted_.size());
    // Guard against n*u landing one ulp above an integer for grid levels k/n.
    auto k = static_cast<std::size_t>(std::ceil(n * u - 1e-9));
    if (k < 1) k = 1;
    if (k > sorted_.size()) k = sorted_.size();
    return sorted_[k - 1];
}

double roc_point(const EmpiricalCdf& h, const EmpiricalCdf& g, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("ROC abscissa must lie in [0,1]");
    const double t = h.quantile(1.0 - alpha);
    if (t == kNegInf) return 1.0;
    return 1.0 - g(t);
}

double auc(const EmpiricalCdf& neg, const EmpiricalCdf& pos) {
    const auto& h = neg.sorted_scores();
    const auto& g = pos.sorted_scores();
    std::uint64_t twice_numerator = 0;  // 2 per (pos > neg) pair, 1 per tie
    std::size_t below = 0;              // #neg strictly below current pos
    std::size_t below_or_eq = 0;        // #neg at or below current pos
    for (double s : g) {
        while (below < h.size() && h[below] < s) ++below;
        while (below_or_eq < h.size() && h[below_or_eq] <= s) ++below_or_eq;
        twice_numerator += 2 * below + (below_or_eq - below);
    }
    const auto pairs = static_cast<std::uint64_t>(h.size()) * g.size();
    return static_cast<double>(twice_numerator) / static_cast<double>(2 * pairs);
}

}  // namespace fairrank
