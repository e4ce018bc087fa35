#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace curvelab {

/// Deterministic RNG with a platform-independent stream.  The standard
/// distributions are implementation-defined, so uniform and normal draws
/// are produced here from raw splitmix64 output; identical seeds give
/// byte-identical report files on any build.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (both transcendentals are
    /// correctly-rounded enough to reproduce bit-for-bit per libm build).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    /// Derives an independent stream for a labelled sub-experiment.
    static std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t label) {
        Rng mix(seed ^ (0x853c49e6748fea9bULL + label * 0xda3e39cb94b95bdbULL));
        return mix.next_u64();
    }

private:
    std::uint64_t state_;
};

} // namespace curvelab
