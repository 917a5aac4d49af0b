#include <doctest.h>

#include <cmath>

#include "fairrank/dataset.hpp"
#include "fairrank/error.hpp"
#include "fairrank/rng.hpp"
#include "fairrank/synth.hpp"

using namespace fairrank;

namespace {

Dataset four_cells() {
    std::vector<LabeledSample> samples = {
        {{0.0}, -1, 0}, {{0.1}, -1, 1}, {{0.2}, 1, 0}, {{0.3}, 1, 1}};
    return Dataset(std::move(samples), 1);
}

bool same_samples(const LabeledSample& a, const LabeledSample& b) {
    return a.features == b.features && a.label == b.label && a.group == b.group;
}

}  // namespace

TEST_CASE("dataset invariants enforced at construction") {
    CHECK_THROWS_AS(Dataset({}, 3), ConfigError);
    CHECK_THROWS_AS(Dataset({{{1.0, 2.0}, 1, 0}}, 1), ShapeError);
    CHECK_THROWS_AS(Dataset({{{1.0}, 0, 0}}, 1), ConfigError);
    CHECK_THROWS_AS(Dataset({{{1.0}, 1, 2}}, 1), ConfigError);
}

TEST_CASE("cell_counts on pinned datasets") {
    const CellCounts counts = cell_counts(four_cells());
    CHECK(counts.n_neg_by_group[0] == 1);
    CHECK(counts.n_neg_by_group[1] == 1);
    CHECK(counts.n_pos_by_group[0] == 1);
    CHECK(counts.n_pos_by_group[1] == 1);
    CHECK(counts.n() == 4);
    CHECK(counts.p_hat() == doctest::Approx(0.5));
    CHECK(counts.q_hat(1) == doctest::Approx(0.5));
    CHECK(counts.p_hat_group(0) == doctest::Approx(0.5));

    std::vector<LabeledSample> only_pos = {{{0.0}, 1, 0}, {{0.1}, 1, 1}, {{0.2}, 1, 1}};
    const CellCounts pos_counts = cell_counts(Dataset(std::move(only_pos), 1));
    CHECK(pos_counts.n_neg_by_group[0] == 0);
    CHECK(pos_counts.n_neg_by_group[1] == 0);
}

TEST_CASE("group frequency lands in the binomial band of the generator") {
    SquareConfig cfg;
    cfg.n = 1000;
    cfg.q1 = 17.0 / 20.0;
    cfg.seed = 12345;
    const CellCounts counts = cell_counts(gen_square(cfg));
    const double freq = counts.q_hat(1);
    const double band = 3.0 * std::sqrt(0.85 * 0.15 / 1000.0);
    CHECK(freq > 0.85 - band);
    CHECK(freq < 0.85 + band);
}

TEST_CASE("split sizes and determinism") {
    SquareConfig cfg;
    cfg.n = 10;
    cfg.seed = 3;
    const Dataset data = gen_square(cfg);

    SUBCASE("fraction 0 keeps everything in train") {
        const auto [train, validation] = split(data, 0.0, 1);
        CHECK(train.size() == 10);
        CHECK(validation.size() == 0);
        CHECK(validation.dim() == data.dim());
    }

    SUBCASE("floor arithmetic") {
        const auto [train, validation] = split(data, 0.4, 1);
        CHECK(validation.size() == 4);
        CHECK(train.size() == 6);
    }

    SUBCASE("same seed, same split; different seed, different split") {
        const auto [t1, v1] = split(data, 0.4, 42);
        const auto [t2, v2] = split(data, 0.4, 42);
        REQUIRE(v1.size() == v2.size());
        for (std::size_t i = 0; i < v1.size(); ++i) CHECK(same_samples(v1[i], v2[i]));
        for (std::size_t i = 0; i < t1.size(); ++i) CHECK(same_samples(t1[i], t2[i]));
    }

    SUBCASE("invalid fractions rejected") {
        CHECK_THROWS_AS(split(data, 1.0, 1), ConfigError);
        CHECK_THROWS_AS(split(data, -0.1, 1), ConfigError);
    }
}

TEST_CASE("split is a partition and cell counts add up") {
    SquareConfig cfg;
    cfg.n = 257;
    cfg.q1 = 0.3;
    cfg.seed = 99;
    const Dataset data = gen_square(cfg);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto [train, validation] = split(data, 0.4, seed);
        CHECK(train.size() + validation.size() == data.size());

        const CellCounts whole = cell_counts(data);
        const CellCounts a = cell_counts(train);
        const CellCounts b = cell_counts(validation);
        for (int z = 0; z < 2; ++z) {
            CHECK(a.n_pos_by_group[z] + b.n_pos_by_group[z] == whole.n_pos_by_group[z]);
            CHECK(a.n_neg_by_group[z] + b.n_neg_by_group[z] == whole.n_neg_by_group[z]);
        }

        // Disjointness: multiset of feature vectors must reassemble exactly.
        std::vector<std::vector<double>> seen;
        for (std::size_t i = 0; i < train.size(); ++i) seen.push_back(train[i].features);
        for (std::size_t i = 0; i < validation.size(); ++i)
            seen.push_back(validation[i].features);
        std::vector<std::vector<double>> original;
        for (std::size_t i = 0; i < data.size(); ++i) original.push_back(data[i].features);
        std::sort(seen.begin(), seen.end());
        std::sort(original.begin(), original.end());
        CHECK(seen == original);
    }
}

TEST_CASE("stratified split preserves cell proportions") {
    SquareConfig cfg;
    cfg.n = 1000;
    cfg.q1 = 0.2;
    cfg.seed = 5;
    const Dataset data = gen_square(cfg);
    const auto [train, validation] = split_stratified(data, 0.4, 7);
    const CellCounts whole = cell_counts(data);
    const CellCounts val = cell_counts(validation);
    for (int z = 0; z < 2; ++z) {
        CHECK(val.n_pos_by_group[z] ==
              static_cast<std::size_t>(0.4 * static_cast<double>(whole.n_pos_by_group[z])));
        CHECK(val.n_neg_by_group[z] ==
              static_cast<std::size_t>(0.4 * static_cast<double>(whole.n_neg_by_group[z])));
    }
}
