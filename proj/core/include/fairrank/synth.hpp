#pragma once

#include <cstdint>

#include "fairrank/dataset.hpp"

namespace fairrank {

// Uniform square distribution: X ~ U([0,1]^2), Z ~ Bernoulli(q1), and the
// positive-label probability is x1 for group 0 and x2 for group 1.
struct SquareConfig {
    std::size_t n = 0;
    double q1 = 0.5;  // P(Z = 1)
    std::uint64_t seed = 0;
};

// Quarter disk / quarter annulus distribution: group 0 is uniform on the
// quarter disk of radius 1/2, group 1 on the quarter annulus with radii
// [1/2, 1] (bounds on the radius ||x||; that is the reading under which the
// stated densities 16/pi and 16/(3*pi) integrate to one). Both groups share
// the positive-label probability (2/pi) * arctan(x2/x1).
struct DiskConfig {
    std::size_t n = 0;
    double q1 = 0.5;
    std::uint64_t seed = 0;
};

Dataset gen_square(const SquareConfig& cfg);
Dataset gen_disk(const DiskConfig& cfg);

// Score families used to sweep the penalized objectives of the two
// distributions: c*x1 + (1-c)*x2 on the square, -c*x1 + (1-c)*x2 on the disk.
double square_family_score(double c, double x1, double x2);
double disk_family_score(double c, double x1, double x2);

// Maps a linear (depth 0) model's output weights back to the family
// parameter c, assuming the score is positively oriented within the family.
double square_family_c(double w1, double w2);
double disk_family_c(double w1, double w2);

}  // namespace fairrank
