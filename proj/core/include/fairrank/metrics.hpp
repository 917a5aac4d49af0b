#pragma once

#include <array>
#include <span>
#include <vector>

#include "fairrank/cdf.hpp"
#include "fairrank/constraints.hpp"
#include "fairrank/dataset.hpp"

namespace fairrank {

// Scores partitioned by (label, group) cell: neg[z] holds the scores of
// negatives in group z (the sample behind H^(z)), pos[z] those of positives
// (behind G^(z)).
struct CellScores {
    std::array<std::vector<double>, 2> neg;
    std::array<std::vector<double>, 2> pos;

    static CellScores from_dataset(const Dataset& data, std::span<const double> scores);

    std::vector<double> pooled_neg() const;
    std::vector<double> pooled_pos() const;
    std::vector<double> group_all(int z) const;  // negatives and positives of group z
};

// The five elementary fairness measurements C_1..C_5.
// C_1, C_2 quantify cross-group resemblance of the negatives/positives;
// C_3..C_5 quantify differences in discrimination ability across cells.
struct CVector {
    std::array<double, 5> c{};
    double operator[](std::size_t l) const { return c[l]; }
};

// Requires all four cells nonempty; throws StatError naming the missing cell.
CVector c_vector(const CellScores& cells);

// Gamma^T C(s).
double gamma_value(const GammaConstraint& gamma, const CVector& c);

enum class CdfFamily { H, G };  // H: negatives, G: positives

// Pointwise inter-group ROC deviation ROC_{F^(0),F^(1)}(alpha) - alpha.
double delta_point(const EmpiricalCdf& group0, const EmpiricalCdf& group1, double alpha);
double delta(CdfFamily family, const CellScores& cells, double alpha);

enum class ParityMode { FprParity, FnrParity };

struct ThresholdAtAlpha {
    double alpha = 0.0;
    double threshold = 0.0;  // actual score value; -inf at alpha == 0
    double gap = 0.0;        // certified group-conditional rate gap
};

// Scans the grid and returns every alpha whose induced classifier g_{s,t}
// has a group-conditional FNR (resp. FPR) gap at most tol. The threshold is
// t = H^{-1}(alpha) against the pooled negatives for FNR parity and
// t = (H^(0))^{-1}(alpha) for FPR parity.
std::vector<ThresholdAtAlpha> fair_threshold_scan(const CellScores& cells, ParityMode mode,
                                                  std::span<const double> grid, double tol);

}  // namespace fairrank
