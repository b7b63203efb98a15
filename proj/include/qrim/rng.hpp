// rng.hpp: Seeded, portable random streams for sampling campaigns
//
// Every sample index gets its own std::mt19937_64 seeded through std::seed_seq
// from (seed, index). Both algorithms are fully specified by the C++ standard, so
// streams are identical across platforms. Doubles are built from the top 53 bits
// of a draw instead of std::uniform_real_distribution, whose algorithm is
// implementation-defined.

#pragma once

#include "qrim/model.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace qrim {

class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t index) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index),
                          static_cast<std::uint32_t>(index >> 32)};
        engine_.seed(seq);
    }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

// Uniformly random population and a coherence inside the positivity disc.
inline QubitState random_state(SampleStream& rng) {
    const double p = rng.uniform();
    const double r = std::sqrt(rng.uniform()) * std::sqrt(p * (1.0 - p));
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return {p, std::polar(r, phase)};
}

}  // namespace qrim
