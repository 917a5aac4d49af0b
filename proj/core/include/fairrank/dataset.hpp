#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace fairrank {

// One observation: feature vector x, binary label y in {-1,+1} and
// sensitive group z in {0,1}.
struct LabeledSample {
    std::vector<double> features;
    int label = -1;
    int group = 0;
};

// Immutable ordered collection of samples sharing a feature dimension.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<LabeledSample> samples, std::size_t dim);

    // Zero-row dataset with a known dimension; only produced by degenerate
    // splits (validation_fraction == 0).
    static Dataset empty_with_dim(std::size_t dim);

    std::size_t size() const { return samples_.size(); }
    std::size_t dim() const { return dim_; }
    const LabeledSample& operator[](std::size_t i) const { return samples_[i]; }
    const std::vector<LabeledSample>& samples() const { return samples_; }

private:
    std::vector<LabeledSample> samples_;
    std::size_t dim_ = 0;
};

// Per-(label, group) cell sizes and the empirical rates derived from them.
struct CellCounts {
    std::array<std::size_t, 2> n_pos_by_group{0, 0};  // [z=0, z=1]
    std::array<std::size_t, 2> n_neg_by_group{0, 0};

    std::size_t n() const;
    std::size_t n_pos() const { return n_pos_by_group[0] + n_pos_by_group[1]; }
    std::size_t n_neg() const { return n_neg_by_group[0] + n_neg_by_group[1]; }
    std::size_t n_group(int z) const { return n_pos_by_group[z] + n_neg_by_group[z]; }

    double p_hat() const;               // P(Y=+1)
    double q_hat(int z) const;          // P(Z=z)
    double p_hat_group(int z) const;    // P(Y=+1 | Z=z)
};

CellCounts cell_counts(const Dataset& data);

// Uniform-permutation split into train and validation parts.
// |validation| = floor(fraction * n); index sets are disjoint and exhaustive;
// deterministic for a fixed seed.
std::pair<Dataset, Dataset> split(const Dataset& data, double validation_fraction,
                                  std::uint64_t seed);

// Per-(y,z)-cell variant of split for very small datasets. Cell proportions
// are preserved up to floor rounding, so the validation size may differ from
// floor(fraction * n) by at most 3.
std::pair<Dataset, Dataset> split_stratified(const Dataset& data, double validation_fraction,
                                             std::uint64_t seed);

}  // namespace fairrank
