#pragma once

// Counter-based streams: trial t of a run seeded with s draws from
// SplitMix64 started at mix(s, t). Any partition of the trials over
// threads reproduces the serial sequence.

#include <cmath>
#include <cstdint>

namespace eqp {

inline std::uint64_t splitmix64_step(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64_step(s);
    std::uint64_t c = counter ^ a;
    return splitmix64_step(c);
}

class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t counter) : state_(mix_seed(seed, counter)) {}

    std::uint64_t next() { return splitmix64_step(state_); }

    // Uniform on (0, 1), 53 bits.
    double uniform() { return ((next() >> 11) + 0.5) * 0x1.0p-53; }

    // Box-Muller; the second variate is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double th = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(th);
        has_spare_ = true;
        return r * std::cos(th);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace eqp
