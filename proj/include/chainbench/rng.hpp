#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace chainbench {

// Counter-based deterministic random stream built on splitmix64.
//
// A stream is fully determined by its 64-bit state, and `split(key)`
// derives an independent child stream (per round, per replicate, per
// node). Identical seed and identical split structure reproduce the
// exact same draws on every platform; no <random> distributions are
// used anywhere because their output is implementation-defined.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : state_(mix(seed ^ kInitTweak)) {}

    // Independent child stream identified by `key`.
    RandomSource split(std::uint64_t key) const {
        RandomSource child(0);
        child.state_ = mix(state_ ^ mix(key + kSplitTweak));
        return child;
    }

    RandomSource split(std::uint64_t a, std::uint64_t b) const { return split(a).split(b); }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform draw in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform draw in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("next_below: n must be positive");
        return next_u64() % n;
    }

    // Inverse-CDF draw from a categorical distribution. The atom index is
    // the first i with cumulative mass >= u, skipping zero-mass atoms, so
    // exact ties on the cumulative boundary resolve toward the lower index.
    int sample_categorical(std::span<const double> probs) {
        if (probs.empty()) throw std::invalid_argument("sample_categorical: empty distribution");
        const double u = next_unit();
        double cum = 0.0;
        int last_positive = -1;
        for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
            if (probs[i] <= 0.0) continue;
            cum += probs[i];
            last_positive = i;
            if (u <= cum) return i;
        }
        if (last_positive < 0) throw std::invalid_argument("sample_categorical: no positive mass");
        return last_positive;
    }

private:
    static constexpr std::uint64_t kInitTweak = 0x243F6A8885A308D3ULL;
    static constexpr std::uint64_t kSplitTweak = 0x452821E638D01377ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace chainbench
