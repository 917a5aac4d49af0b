#include "fairrank/metrics.hpp"

#include <cmath>
#include <string>

#include "fairrank/error.hpp"

namespace fairrank {

CellScores CellScores::from_dataset(const Dataset& data, std::span<const double> scores) {
    if (scores.size() != data.size())
        throw ShapeError("score vector length does not match the dataset");
    CellScores cells;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& s = data[i];
        auto& bucket = s.label > 0 ? cells.pos[s.group] : cells.neg[s.group];
        bucket.push_back(scores[i]);
    }
    return cells;
}

std::vector<double> CellScores::pooled_neg() const {
    std::vector<double> out(neg[0]);
    out.insert(out.end(), neg[1].begin(), neg[1].end());
    return out;
}

std::vector<double> CellScores::pooled_pos() const {
    std::vector<double> out(pos[0]);
    out.insert(out.end(), pos[1].begin(), pos[1].end());
    return out;
}

std::vector<double> CellScores::group_all(int z) const {
    std::vector<double> out(neg[z]);
    out.insert(out.end(), pos[z].begin(), pos[z].end());
    return out;
}

namespace {

const std::vector<double>& require_cell(const std::vector<double>& cell, const char* name) {
    if (cell.empty())
        throw StatError(std::string("cell ") + name + " is empty; statistic undefined");
    return cell;
}

}  // namespace

CVector c_vector(const CellScores& cells) {
    EmpiricalCdf h0(require_cell(cells.neg[0], "H(0)"));
    EmpiricalCdf h1(require_cell(cells.neg[1], "H(1)"));
    EmpiricalCdf g0(require_cell(cells.pos[0], "G(0)"));
    EmpiricalCdf g1(require_cell(cells.pos[1], "G(1)"));

    CVector out;
    out.c[0] = auc(h0, h1) - 0.5;
    out.c[1] = 0.5 - auc(g0, g1);
    out.c[2] = auc(h0, g0) - auc(h0, g1);
    out.c[3] = auc(h0, g1) - auc(h1, g0);
    out.c[4] = auc(h1, g0) - auc(h1, g1);
    return out;
}

double gamma_value(const GammaConstraint& gamma, const CVector& c) {
    double dot = 0.0;
    for (std::size_t l = 0; l < 5; ++l) dot += gamma.gamma[l] * c.c[l];
    return dot;
}

double delta_point(const EmpiricalCdf& group0, const EmpiricalCdf& group1, double alpha) {
    return roc_point(group0, group1, alpha) - alpha;
}

double delta(CdfFamily family, const CellScores& cells, double alpha) {
    const bool is_h = family == CdfFamily::H;
    const auto& c0 = is_h ? cells.neg[0] : cells.pos[0];
    const auto& c1 = is_h ? cells.neg[1] : cells.pos[1];
    EmpiricalCdf f0(require_cell(c0, is_h ? "H(0)" : "G(0)"));
    EmpiricalCdf f1(require_cell(c1, is_h ? "H(1)" : "G(1)"));
    return delta_point(f0, f1, alpha);
}

std::vector<ThresholdAtAlpha> fair_threshold_scan(const CellScores& cells, ParityMode mode,
                                                  std::span<const double> grid, double tol) {
    if (tol < 0.0) throw DomainError("threshold scan tolerance must be nonnegative");
    for (double a : grid)
        if (!(a >= 0.0 && a <= 1.0)) throw DomainError("scan grid values must lie in [0,1]");

    std::vector<ThresholdAtAlpha> hits;
    if (mode == ParityMode::FnrParity) {
        // g_{s,t} with t = H^{-1}(alpha): FNR of group z is G^(z)(t).
        EmpiricalCdf h(require_cell(cells.pooled_neg(), "H"));
        EmpiricalCdf g0(require_cell(cells.pos[0], "G(0)"));
        EmpiricalCdf g1(require_cell(cells.pos[1], "G(1)"));
        for (double a : grid) {
            const double t = h.quantile(a);
            const double gap = t == kNegInf ? 0.0 : std::abs(g0(t) - g1(t));
            if (gap <= tol) hits.push_back({a, t, gap});
        }
    } else {
        // t = (H^(0))^{-1}(alpha): FPR of group z is 1 - H^(z)(t).
        EmpiricalCdf h0(require_cell(cells.neg[0], "H(0)"));
        EmpiricalCdf h1(require_cell(cells.neg[1], "H(1)"));
        for (double a : grid) {
            const double t = h0.quantile(a);
            const double gap = t == kNegInf ? 0.0 : std::abs(h0(t) - h1(t));
            if (gap <= tol) hits.push_back({a, t, gap});
        }
    }
    return hits;
}

}  // namespace fairrank
