#include "fairrank/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "fairrank/error.hpp"

namespace fairrank {

ConstraintGap named_constraint_gap(ConstraintKind kind, const CellScores& cells,
                                   const Rates& rates) {
    EmpiricalCdf h0(cells.neg[0]), h1(cells.neg[1]);
    EmpiricalCdf g0(cells.pos[0]), g1(cells.pos[1]);

    ConstraintGap gap;
    gap.kind = to_string(kind);
    switch (kind) {
        case ConstraintKind::IntraGroup:
            gap.auc_a = auc(h0, g0);
            gap.auc_b = auc(h1, g1);
            break;
        case ConstraintKind::Bnsp: {
            EmpiricalCdf h(cells.pooled_neg());
            gap.auc_a = auc(h, g0);
            gap.auc_b = auc(h, g1);
            break;
        }
        case ConstraintKind::Bpsn: {
            EmpiricalCdf g(cells.pooled_pos());
            gap.auc_a = auc(h0, g);
            gap.auc_b = auc(h1, g);
            break;
        }
        case ConstraintKind::ZeroAeg: {
            EmpiricalCdf g(cells.pooled_pos());
            gap.auc_a = auc(g, g0);
            gap.auc_b = auc(g, g1);
            break;
        }
        case ConstraintKind::Xauc:
            gap.auc_a = auc(h0, g1);
            gap.auc_b = auc(h1, g0);
            break;
        case ConstraintKind::ReferenceGroup: {
            EmpiricalCdf f0(cells.group_all(0));
            gap.auc_a = auc(f0, g0);
            gap.auc_b = auc(f0, g1);
            break;
        }
    }
    gap.delta_auc = std::abs(gap.auc_a - gap.auc_b);
    gap.gamma_c = gamma_value(make_named(kind, rates), c_vector(cells));
    return gap;
}

MetricsReport build_report(const Dataset& data, std::span<const double> scores,
                           std::span<const double> delta_alphas,
                           const std::optional<ScanRequest>& scan) {
    MetricsReport report;
    report.counts = cell_counts(data);
    const CellScores cells = CellScores::from_dataset(data, scores);

    EmpiricalCdf h(cells.pooled_neg());
    EmpiricalCdf g(cells.pooled_pos());
    report.auc = auc(h, g);
    report.c = c_vector(cells);

    const Rates rates = Rates::from_counts(report.counts);
    for (ConstraintKind kind : kAllConstraintKinds)
        report.constraints.push_back(named_constraint_gap(kind, cells, rates));

    for (double alpha : delta_alphas) {
        report.deltas.push_back({CdfFamily::H, alpha, delta(CdfFamily::H, cells, alpha)});
        report.deltas.push_back({CdfFamily::G, alpha, delta(CdfFamily::G, cells, alpha)});
    }

    if (scan.has_value()) {
        report.scan = scan;
        report.scan_hits = fair_threshold_scan(cells, scan->mode, scan->grid, scan->tol);
    }
    return report;
}

std::string MetricsReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["auc"] = auc;
    j["cell_counts"] = {{"n", counts.n()},
                        {"n_pos_by_group", counts.n_pos_by_group},
                        {"n_neg_by_group", counts.n_neg_by_group}};
    j["c_vector"] = c.c;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& gap : constraints)
        rows.push_back({{"kind", gap.kind},
                        {"auc_a", gap.auc_a},
                        {"auc_b", gap.auc_b},
                        {"delta_auc", gap.delta_auc},
                        {"gamma_c", gap.gamma_c}});
    j["constraints"] = rows;
    nlohmann::json deltas_json = nlohmann::json::array();
    for (const auto& d : deltas)
        deltas_json.push_back({{"family", d.family == CdfFamily::H ? "H" : "G"},
                               {"alpha", d.alpha},
                               {"delta", d.value}});
    j["deltas"] = deltas_json;
    if (scan.has_value()) {
        nlohmann::json hits = nlohmann::json::array();
        for (const auto& hit : scan_hits) {
            nlohmann::json row = {{"alpha", hit.alpha}, {"gap", hit.gap}};
            // -inf (alpha == 0) serializes as null.
            row["threshold"] = hit.threshold;
            hits.push_back(row);
        }
        j["threshold_scan"] = {
            {"mode", scan->mode == ParityMode::FprParity ? "fpr_parity" : "fnr_parity"},
            {"tol", scan->tol},
            {"hits", hits}};
    }
    return j.dump(2);
}

std::string roc_curve_csv(const EmpiricalCdf& h, const EmpiricalCdf& g,
                          std::size_t even_points, std::size_t jump_cap) {
    std::vector<double> grid;
    grid.reserve(even_points + h.size() + 1);
    for (std::size_t i = 0; i < even_points; ++i)
        grid.push_back(static_cast<double>(i) / static_cast<double>(even_points - 1));
    if (h.size() + even_points < jump_cap) {
        // The curve jumps at multiples of 1/|h|.
        for (std::size_t k = 0; k <= h.size(); ++k)
            grid.push_back(static_cast<double>(k) / static_cast<double>(h.size()));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::ostringstream out;
    out.precision(17);
    out << "alpha,roc\n";
    for (double alpha : grid) out << alpha << ',' << roc_point(h, g, alpha) << '\n';
    return out.str();
}

std::vector<NamedCurve> standard_roc_curves(const CellScores& cells) {
    const auto h = cells.pooled_neg();
    const auto g = cells.pooled_pos();
    return {
        {"roc_h_g", h, g},
        {"roc_h0_g0", cells.neg[0], cells.pos[0]},
        {"roc_h1_g1", cells.neg[1], cells.pos[1]},
        {"roc_h0_g", cells.neg[0], g},
        {"roc_h1_g", cells.neg[1], g},
        {"roc_h_g0", h, cells.pos[0]},
        {"roc_h_g1", h, cells.pos[1]},
        {"roc_h0_h1", cells.neg[0], cells.neg[1]},
        {"roc_g0_g1", cells.pos[0], cells.pos[1]},
        {"roc_h1_g0", cells.neg[1], cells.pos[0]},
        {"roc_h0_g1", cells.neg[0], cells.pos[1]},
    };
}

}  // namespace fairrank
