#pragma once

#include <limits>
#include <span>
#include <vector>

namespace fairrank {

// Empirical cumulative distribution of a score sample. Evaluation follows the
// right-continuous convention F(t) = #{s_i <= t} / n and the pseudo-inverse is
// F^{-1}(u) = inf{ t : F(t) >= u }, with F^{-1}(0) = -infinity so that
// compositions like g(h^{-1}(0)) evaluate to 0.
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::vector<double> scores);
    explicit EmpiricalCdf(std::span<const double> scores)
        : EmpiricalCdf(std::vector<double>(scores.begin(), scores.end())) {}

    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& sorted_scores() const { return sorted_; }

    double operator()(double t) const;   // F(t)
    double quantile(double u) const;     // F^{-1}(u), u in [0,1]

private:
    std::vector<double> sorted_;
};

// ROC_{h,g}(alpha) = 1 - g(h^{-1}(1 - alpha)). Exact pseudo-inverse
// composition of the two step functions; no interpolation.
double roc_point(const EmpiricalCdf& h, const EmpiricalCdf& g, double alpha);

// Queryable curve over a pair of empirical distributions.
class RocCurve {
public:
    RocCurve(EmpiricalCdf h, EmpiricalCdf g) : h_(std::move(h)), g_(std::move(g)) {}
    double operator()(double alpha) const { return roc_point(h_, g_, alpha); }
    const EmpiricalCdf& h() const { return h_; }
    const EmpiricalCdf& g() const { return g_; }

private:
    EmpiricalCdf h_, g_;
};

// AUC_{h,g} = P(S' > S) + P(S' = S)/2 with S ~ h, S' ~ g.
// Sort-and-merge pair counting: the numerator is accumulated as an exact
// integer (2 per won pair, 1 per tie) and divided once at the end, so the
// result is bit-identical to brute-force pair enumeration.
double auc(const EmpiricalCdf& neg, const EmpiricalCdf& pos);

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace fairrank
