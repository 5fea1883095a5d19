#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rdk {

/// mt19937_64 with explicit bit-to-double mappings so that streams are
/// identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Exponential with the given mean (mean 0 yields the constant 0).
    double exponential(double mean) {
        if (mean <= 0.0) return 0.0;
        return -mean * std::log1p(-uniform01());
    }

private:
    std::mt19937_64 engine_;
};

} // namespace rdk
