#include <doctest.h>

#include <cmath>

#include "fairrank/constraints.hpp"
#include "fairrank/error.hpp"
#include "fairrank/rng.hpp"

using namespace fairrank;

namespace {

Rates make_rates(double p0, double p1, double q1) {
    Rates r;
    r.q = {1.0 - q1, q1};
    r.p_z = {p0, p1};
    r.p = r.q[0] * p0 + r.q[1] * p1;
    return r;
}

}  // namespace

TEST_CASE("named gamma rows") {
    const Rates rates = make_rates(0.3, 0.6, 0.5);

    SUBCASE("intra-group weights") {
        const auto g = make_named(ConstraintKind::IntraGroup, rates).gamma;
        CHECK(g[0] == 0.0);
        CHECK(g[1] == 0.0);
        CHECK(g[2] == doctest::Approx(1.0 / 3.0));
        CHECK(g[3] == doctest::Approx(1.0 / 3.0));
        CHECK(g[4] == doctest::Approx(1.0 / 3.0));
    }

    SUBCASE("xauc is the fourth basis vector") {
        const auto g = make_named(ConstraintKind::Xauc, rates).gamma;
        CHECK(g == std::array<double, 5>{0, 0, 0, 1, 0});
    }

    SUBCASE("zero average equality gap is the second basis vector") {
        const auto g = make_named(ConstraintKind::ZeroAeg, rates).gamma;
        CHECK(g == std::array<double, 5>{0, 1, 0, 0, 0});
    }

    SUBCASE("bnsp with symmetric rates collapses to (0,0,1/2,0,1/2)") {
        const Rates sym = make_rates(0.4, 0.4, 0.5);
        const auto g = make_named(ConstraintKind::Bnsp, sym).gamma;
        CHECK(g[2] == doctest::Approx(0.5));
        CHECK(g[3] == 0.0);
        CHECK(g[4] == doctest::Approx(0.5));
    }

    SUBCASE("bpsn row") {
        const auto g = make_named(ConstraintKind::Bpsn, rates).gamma;
        CHECK(g[2] == doctest::Approx(rates.q[0] * rates.p_z[0] / (2.0 * rates.p)));
        CHECK(g[3] == doctest::Approx(0.5));
        CHECK(g[4] == doctest::Approx(rates.q[1] * rates.p_z[1] / (2.0 * rates.p)));
    }

    SUBCASE("reference-group row") {
        const auto g = make_named(ConstraintKind::ReferenceGroup, rates).gamma;
        CHECK(g[1] == doctest::Approx(0.3));
        CHECK(g[2] == doctest::Approx(0.7));
        CHECK(g[3] == 0.0);
        CHECK(g[4] == 0.0);
    }

    SUBCASE("degenerate rates rejected") {
        CHECK_THROWS_AS(make_named(ConstraintKind::Bpsn, make_rates(0.0, 0.0, 0.5)),
                        ConfigError);
        CHECK_THROWS_AS(make_named(ConstraintKind::Bnsp, make_rates(1.0, 1.0, 0.5)),
                        ConfigError);
    }
}

TEST_CASE("constraint kind names round-trip") {
    for (ConstraintKind kind : kAllConstraintKinds)
        CHECK(constraint_kind_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(constraint_kind_from_string("nonsense"), ConfigError);
}

TEST_CASE("relevance predicate on pinned mixtures") {
    constexpr std::array<double, 4> e1{1, 0, 0, 0}, e2{0, 1, 0, 0}, e3{0, 0, 1, 0},
        e4{0, 0, 0, 1};

    // Intra-group as a mixture: (1-1) - (0-0) = 0.
    CHECK(is_relevant({e1, e3, e2, e4}));
    // Swapped arguments: (e1+e2)^T (2 e1 - 2 e3) = 2.
    CHECK_FALSE(is_relevant({e1, e3, e3, e1}));
    // Identical sides are trivially relevant.
    CHECK(is_relevant({e2, e4, e2, e4}));

    MixtureConstraint bad{{0.5, 0.5, 0.5, 0.5}, e3, e1, e4};
    CHECK_THROWS_AS((void)is_relevant(bad), ConfigError);
    MixtureConstraint negative{{1.5, -0.5, 0, 0}, e3, e1, e4};
    CHECK_THROWS_AS((void)is_relevant(negative), ConfigError);
}

TEST_CASE("every named constraint's mixture form is relevant") {
    Rng rng(41);
    for (int rep = 0; rep < 25; ++rep) {
        const double p0 = 0.05 + 0.9 * rng.uniform01();
        const double p1 = 0.05 + 0.9 * rng.uniform01();
        const double q1 = 0.05 + 0.9 * rng.uniform01();
        const Rates rates = make_rates(p0, p1, q1);
        for (ConstraintKind kind : kAllConstraintKinds)
            CHECK(is_relevant(mixture_form(kind, rates)));
    }
}
