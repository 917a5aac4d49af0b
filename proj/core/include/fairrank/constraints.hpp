#pragma once

#include <array>
#include <string>
#include <string_view>

#include "fairrank/dataset.hpp"

namespace fairrank {

// Coefficients of a linear fairness constraint Gamma^T C(s) = 0 over the five
// elementary measurements. No normalization is required: the constraint is
// homogeneous in Gamma.
struct GammaConstraint {
    std::array<double, 5> gamma{};
};

enum class ConstraintKind {
    IntraGroup,      // equal within-group ranking performance
    Bnsp,            // background negative, subgroup positive (FNR-parity analogue)
    Bpsn,            // background positive, subgroup negative (FPR-parity analogue)
    ZeroAeg,         // zero average equality gap
    Xauc,            // inter-group pairwise (xAUC) parity
    ReferenceGroup,  // positives of each group vs the group-0 mixture
};

inline constexpr std::array<ConstraintKind, 6> kAllConstraintKinds = {
    ConstraintKind::IntraGroup, ConstraintKind::Bnsp,  ConstraintKind::Bpsn,
    ConstraintKind::ZeroAeg,    ConstraintKind::Xauc,  ConstraintKind::ReferenceGroup,
};

// Stable names used by CLI configs.
std::string to_string(ConstraintKind kind);
ConstraintKind constraint_kind_from_string(std::string_view name);

// Empirical class/group rates plugged into the rate-dependent constraints.
struct Rates {
    double p = 0.0;                 // P(Y=+1)
    std::array<double, 2> q{};      // P(Z=z)
    std::array<double, 2> p_z{};    // P(Y=+1 | Z=z)

    static Rates from_counts(const CellCounts& counts);
};

GammaConstraint make_named(ConstraintKind kind, const Rates& rates);

// An AUC equality between mixtures of the four cell distributions
// (H^(0), H^(1), G^(0), G^(1)): AUC_{a^T D, b^T D} = AUC_{a'^T D, b'^T D}.
// Each weight vector must be a probability vector over the four cells.
struct MixtureConstraint {
    std::array<double, 4> alpha{};
    std::array<double, 4> beta{};
    std::array<double, 4> alpha_prime{};
    std::array<double, 4> beta_prime{};
};

// True iff the constraint is equivalent to Gamma^T C(s) = 0 for some Gamma,
// i.e. (e1+e2)^T [(alpha - alpha') - (beta - beta')] = 0 (within 1e-12).
// Constraints failing this are satisfied only by favoring one group.
bool is_relevant(const MixtureConstraint& mc);

// The defining mixture form of each named constraint (used to cross-check
// the relevance predicate against the Gamma table).
MixtureConstraint mixture_form(ConstraintKind kind, const Rates& rates);

}  // namespace fairrank
