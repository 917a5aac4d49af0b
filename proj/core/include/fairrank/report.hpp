#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairrank/cdf.hpp"
#include "fairrank/constraints.hpp"
#include "fairrank/dataset.hpp"
#include "fairrank/metrics.hpp"

namespace fairrank {

// One named AUC-based constraint evaluated on a scored dataset: the two
// defining AUCs, their absolute difference, and the equivalent Gamma^T C.
struct ConstraintGap {
    std::string kind;
    double auc_a = 0.0;
    double auc_b = 0.0;
    double delta_auc = 0.0;
    double gamma_c = 0.0;
};

ConstraintGap named_constraint_gap(ConstraintKind kind, const CellScores& cells,
                                   const Rates& rates);

struct DeltaValue {
    CdfFamily family = CdfFamily::H;
    double alpha = 0.0;
    double value = 0.0;
};

struct ScanRequest {
    ParityMode mode = ParityMode::FprParity;
    std::vector<double> grid;
    double tol = 0.0;
};

// Full audit of a scored dataset: ranking AUC, cell counts, the C vector,
// all six named constraint gaps, pointwise deviations at the requested
// abscissae and (optionally) a fairness-to-classification threshold scan.
struct MetricsReport {
    double auc = 0.0;
    CellCounts counts;
    CVector c;
    std::vector<ConstraintGap> constraints;
    std::vector<DeltaValue> deltas;
    std::optional<ScanRequest> scan;
    std::vector<ThresholdAtAlpha> scan_hits;

    std::string to_json() const;
};

MetricsReport build_report(const Dataset& data, std::span<const double> scores,
                           std::span<const double> delta_alphas,
                           const std::optional<ScanRequest>& scan = std::nullopt);

// (alpha, ROC(alpha)) rows over 512 evenly spaced abscissae plus, when the
// reference sample is small enough, every empirical jump point.
std::string roc_curve_csv(const EmpiricalCdf& h, const EmpiricalCdf& g,
                          std::size_t even_points = 512, std::size_t jump_cap = 10000);

// The curve families exported by roc-export, with file-stem names.
struct NamedCurve {
    std::string name;
    std::vector<double> h_sample;
    std::vector<double> g_sample;
};
std::vector<NamedCurve> standard_roc_curves(const CellScores& cells);

}  // namespace fairrank
