#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace diris {

/// SplitMix64 output function. Stateless mixer used for seed expansion and
/// for deriving per-trial stream ids.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ with SplitMix64 seeding. Self-contained so that streams are
/// reproducible bit-for-bit across standard libraries; all simulation
/// randomness goes through this class.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) {
            s += 0x9E3779B97F4A7C15ULL;
            w = mix64(s);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1], safe as a log() argument.
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform phase in [0, 2*pi).
    double phase() { return 2.0 * M_PI * uniform(); }

    /// Standard real normal N(0, 1) (Box-Muller, cosine branch).
    double normal() {
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        return r * std::cos(phase());
    }

    /// Circular complex normal CN(0, 1): |z|^2 ~ Exp(1), phase uniform.
    std::complex<double> cnormal() {
        const double r = std::sqrt(-std::log(uniform_pos()));
        const double th = phase();
        return {r * std::cos(th), r * std::sin(th)};
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

/// Stable per-trial stream id. Chain of SplitMix64 mixes over
/// (master, sweep_index, trial_index, scheme_id); documented so that sweep
/// results are reproducible independent of execution order and thread count.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t sweep_index,
                                std::uint64_t trial_index, std::uint64_t scheme_id) {
    std::uint64_t h = mix64(master_seed ^ 0x6A09E667F3BCC909ULL);
    h = mix64(h ^ (0xA0761D6478BD642FULL * (sweep_index + 1)));
    h = mix64(h ^ (0xE7037ED1A0B428DBULL * (trial_index + 1)));
    h = mix64(h ^ (0x8EBC6AF09C88C6E3ULL * (scheme_id + 1)));
    return h;
}

}  // namespace diris
