#include "fairrank/constraints.hpp"

#include <cmath>

#include "fairrank/error.hpp"

namespace fairrank {

std::string to_string(ConstraintKind kind) {
    switch (kind) {
        case ConstraintKind::IntraGroup: return "intra_group";
        case ConstraintKind::Bnsp: return "bnsp";
        case ConstraintKind::Bpsn: return "bpsn";
        case ConstraintKind::ZeroAeg: return "zero_aeg";
        case ConstraintKind::Xauc: return "xauc";
        case ConstraintKind::ReferenceGroup: return "reference_group";
    }
    throw ConfigError("unknown constraint kind");
}

ConstraintKind constraint_kind_from_string(std::string_view name) {
    for (ConstraintKind kind : kAllConstraintKinds)
        if (to_string(kind) == name) return kind;
    throw ConfigError("unknown constraint kind '" + std::string(name) + "'");
}

Rates Rates::from_counts(const CellCounts& counts) {
    Rates r;
    r.p = counts.p_hat();
    for (int z = 0; z < 2; ++z) {
        r.q[z] = counts.q_hat(z);
        if (counts.n_group(z) == 0)
            throw StatError("group " + std::to_string(z) + " is empty; rates undefined");
        r.p_z[z] = counts.p_hat_group(z);
    }
    return r;
}

GammaConstraint make_named(ConstraintKind kind, const Rates& rates) {
    const double p = rates.p;
    const auto& q = rates.q;
    const auto& pz = rates.p_z;
    switch (kind) {
        case ConstraintKind::IntraGroup:
            return {{0.0, 0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
        case ConstraintKind::Bnsp:
            if (p >= 1.0) throw ConfigError("bnsp constraint degenerate: no negatives (p=1)");
            return {{0.0, 0.0, q[0] * (1.0 - pz[0]) / (1.0 - p), 0.0,
                     q[1] * (1.0 - pz[1]) / (1.0 - p)}};
        case ConstraintKind::Bpsn:
            if (p <= 0.0) throw ConfigError("bpsn constraint degenerate: no positives (p=0)");
            return {{0.0, 0.0, q[0] * pz[0] / (2.0 * p), 0.5, q[1] * pz[1] / (2.0 * p)}};
        case ConstraintKind::ZeroAeg:
            return {{0.0, 1.0, 0.0, 0.0, 0.0}};
        case ConstraintKind::Xauc:
            return {{0.0, 0.0, 0.0, 1.0, 0.0}};
        case ConstraintKind::ReferenceGroup:
            return {{0.0, pz[0], 1.0 - pz[0], 0.0, 0.0}};
    }
    throw ConfigError("unknown constraint kind");
}

namespace {

void check_probability_vector(const std::array<double, 4>& v, const char* name) {
    double sum = 0.0;
    for (double x : v) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw ConfigError(std::string("mixture vector ") + name +
                              " has a negative or non-finite entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError(std::string("mixture vector ") + name + " does not sum to 1");
}

}  // namespace

bool is_relevant(const MixtureConstraint& mc) {
    check_probability_vector(mc.alpha, "alpha");
    check_probability_vector(mc.beta, "beta");
    check_probability_vector(mc.alpha_prime, "alpha'");
    check_probability_vector(mc.beta_prime, "beta'");
    double value = 0.0;
    for (int i = 0; i < 2; ++i)
        value += (mc.alpha[i] - mc.alpha_prime[i]) - (mc.beta[i] - mc.beta_prime[i]);
    return std::abs(value) <= 1e-12;
}

MixtureConstraint mixture_form(ConstraintKind kind, const Rates& rates) {
    constexpr std::array<double, 4> e1{1, 0, 0, 0}, e2{0, 1, 0, 0}, e3{0, 0, 1, 0},
        e4{0, 0, 0, 1};
    const double p = rates.p;
    const auto& q = rates.q;
    const auto& pz = rates.p_z;

    // Mixture weights of the pooled negatives H and positives G over cells.
    const std::array<double, 4> h_mix{q[0] * (1.0 - pz[0]) / (1.0 - p),
                                      q[1] * (1.0 - pz[1]) / (1.0 - p), 0.0, 0.0};
    const std::array<double, 4> g_mix{0.0, 0.0, q[0] * pz[0] / p, q[1] * pz[1] / p};
    // Group-0 marginal F^(0) = (1-p_0) H^(0) + p_0 G^(0).
    const std::array<double, 4> f0_mix{1.0 - pz[0], 0.0, pz[0], 0.0};

    switch (kind) {
        case ConstraintKind::IntraGroup:
            return {e1, e3, e2, e4};  // AUC_{H0,G0} = AUC_{H1,G1}
        case ConstraintKind::Bnsp:
            if (p >= 1.0) throw ConfigError("bnsp constraint degenerate: no negatives (p=1)");
            return {h_mix, e3, h_mix, e4};  // AUC_{H,G0} = AUC_{H,G1}
        case ConstraintKind::Bpsn:
            if (p <= 0.0) throw ConfigError("bpsn constraint degenerate: no positives (p=0)");
            return {e1, g_mix, e2, g_mix};  // AUC_{H0,G} = AUC_{H1,G}
        case ConstraintKind::ZeroAeg:
            if (p <= 0.0) throw ConfigError("zero_aeg degenerate: no positives (p=0)");
            return {g_mix, e3, g_mix, e4};  // AUC_{G,G0} = AUC_{G,G1}
        case ConstraintKind::Xauc:
            return {e1, e4, e2, e3};  // AUC_{H0,G1} = AUC_{H1,G0}
        case ConstraintKind::ReferenceGroup:
            return {f0_mix, e3, f0_mix, e4};  // AUC_{F0,G0} = AUC_{F0,G1}
    }
    throw ConfigError("unknown constraint kind");
}

}  // namespace fairrank
