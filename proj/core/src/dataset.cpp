#include "fairrank/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fairrank/error.hpp"
#include "fairrank/rng.hpp"

namespace fairrank {

Dataset::Dataset(std::vector<LabeledSample> samples, std::size_t dim)
    : samples_(std::move(samples)), dim_(dim) {
    if (samples_.empty()) throw ConfigError("dataset must contain at least one sample");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (s.features.size() != dim_)
            throw ShapeError("sample " + std::to_string(i) + " has dimension " +
                             std::to_string(s.features.size()) + ", expected " +
                             std::to_string(dim_));
        if (s.label != -1 && s.label != 1)
            throw ConfigError("sample " + std::to_string(i) + " has label outside {-1,+1}");
        if (s.group != 0 && s.group != 1)
            throw ConfigError("sample " + std::to_string(i) + " has group outside {0,1}");
    }
}

Dataset Dataset::empty_with_dim(std::size_t dim) {
    Dataset d;
    d.dim_ = dim;
    return d;
}

std::size_t CellCounts::n() const {
    return n_pos_by_group[0] + n_pos_by_group[1] + n_neg_by_group[0] + n_neg_by_group[1];
}

double CellCounts::p_hat() const {
    return static_cast<double>(n_pos()) / static_cast<double>(n());
}

double CellCounts::q_hat(int z) const {
    return static_cast<double>(n_group(z)) / static_cast<double>(n());
}

double CellCounts::p_hat_group(int z) const {
    return static_cast<double>(n_pos_by_group[z]) / static_cast<double>(n_group(z));
}

CellCounts cell_counts(const Dataset& data) {
    CellCounts counts;
    for (const auto& s : data.samples()) {
        if (s.label > 0)
            ++counts.n_pos_by_group[s.group];
        else
            ++counts.n_neg_by_group[s.group];
    }
    return counts;
}

namespace {

Dataset subset(const Dataset& data, const std::vector<std::size_t>& indices) {
    std::vector<LabeledSample> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(data[i]);
    return Dataset(std::move(out), data.dim());
}

std::pair<Dataset, Dataset> split_indices(const Dataset& data,
                                          std::vector<std::size_t> validation,
                                          std::vector<std::size_t> train) {
    // Original dataset order is kept inside each part.
    std::sort(validation.begin(), validation.end());
    std::sort(train.begin(), train.end());
    if (validation.empty()) return {subset(data, train), Dataset::empty_with_dim(data.dim())};
    return {subset(data, train), subset(data, validation)};
}

}  // namespace

std::pair<Dataset, Dataset> split(const Dataset& data, double validation_fraction,
                                  std::uint64_t seed) {
    if (!(validation_fraction >= 0.0 && validation_fraction < 1.0))
        throw ConfigError("validation fraction must lie in [0,1)");
    const std::size_t n = data.size();
    const auto m = static_cast<std::size_t>(validation_fraction * static_cast<double>(n));

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = rng.uniform_below(i);
        std::swap(perm[i - 1], perm[j]);
    }

    std::vector<std::size_t> validation(perm.begin(), perm.begin() + static_cast<long>(m));
    std::vector<std::size_t> train(perm.begin() + static_cast<long>(m), perm.end());
    return split_indices(data, std::move(validation), std::move(train));
}

std::pair<Dataset, Dataset> split_stratified(const Dataset& data, double validation_fraction,
                                             std::uint64_t seed) {
    if (!(validation_fraction >= 0.0 && validation_fraction < 1.0))
        throw ConfigError("validation fraction must lie in [0,1)");

    std::array<std::vector<std::size_t>, 4> cells;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& s = data[i];
        cells[(s.label > 0 ? 2 : 0) + s.group].push_back(i);
    }

    Rng rng(seed);
    std::vector<std::size_t> validation, train;
    for (auto& cell : cells) {
        for (std::size_t i = cell.size(); i > 1; --i)
            std::swap(cell[i - 1], cell[rng.uniform_below(i)]);
        const auto m =
            static_cast<std::size_t>(validation_fraction * static_cast<double>(cell.size()));
        validation.insert(validation.end(), cell.begin(), cell.begin() + static_cast<long>(m));
        train.insert(train.end(), cell.begin() + static_cast<long>(m), cell.end());
    }
    return split_indices(data, std::move(validation), std::move(train));
}

}  // namespace fairrank
