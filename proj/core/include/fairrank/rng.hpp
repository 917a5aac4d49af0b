#pragma once

#include <cmath>
#include <cstdint>

namespace fairrank {

// Deterministic splitmix64 generator with hand-rolled distributions.
// Standard-library distributions are implementation-defined, so every random
// draw in the library goes through this type to keep runs bit-reproducible
// across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0,1) with 53 bits of mantissa.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Lemire's multiply-shift; bias is rejected.
    std::uint64_t uniform_below(std::uint64_t n) {
        std::uint64_t x = next_u64();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<unsigned __int128>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via Box-Muller (both values used).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    // Independent stream derived from a base seed and a stream tag.
    static Rng stream(std::uint64_t seed, std::uint64_t tag) {
        Rng mixer(seed ^ (0x6a09e667f3bcc909ULL + tag * 0x3c6ef372fe94f82bULL));
        return Rng(mixer.next_u64());
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Sign convention used by the adaptive updates: sgn(x) = 2*1{x > 0} - 1,
// i.e. sgn(0) = -1.
inline double sgn(double x) { return x > 0.0 ? 1.0 : -1.0; }

}  // namespace fairrank
