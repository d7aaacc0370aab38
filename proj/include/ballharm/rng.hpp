#pragma once

#include <cmath>
#include <cstdint>

#include "ballharm/specfun.hpp"

namespace ballharm {

/// Small deterministic generator (splitmix64 core).  Used everywhere an
/// explicit seed appears in the API so that outputs are reproducible across
/// standard-library implementations; no global generator exists.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * kPi * u2);
    }

    /// Derives an independent stream for substream index `i`.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
        Rng mixer(seed ^ (0xD1B54A32D192ED03ull * (i + 1)));
        return mixer.next_u64();
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace ballharm
