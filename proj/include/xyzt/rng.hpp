#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <utility>

namespace xyzt {

// Counter-based SplitMix64 generator. Small, seedable, and splittable:
// parallel callers derive independent streams via split(stream_index).
// Gaussian variates come from Box-Muller on the top 53 bits, so output
// sequences depend only on the seed, not on platform library internals.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// uniform double in [0, 1)
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// two independent standard normals
    std::pair<double, double> next_gaussian_pair() {
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    /// complex Gaussian with independent standard-normal real/imag parts
    std::complex<double> next_complex_gaussian() {
        auto [re, im] = next_gaussian_pair();
        return {re, im};
    }

    /// independent child generator for a parallel task
    SplitMix64 split(std::uint64_t stream) const {
        std::uint64_t z = state_ ^ ((stream + 1) * 0xD6E8FEB86659FD93ull);
        z = (z ^ (z >> 32)) * 0xD6E8FEB86659FD93ull;
        z = (z ^ (z >> 32)) * 0xD6E8FEB86659FD93ull;
        return SplitMix64(z ^ (z >> 32));
    }

private:
    std::uint64_t state_;
};

} // namespace xyzt
