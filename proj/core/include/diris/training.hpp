#pragma once

#include <vector>

#include "diris/channel.hpp"

namespace diris {

enum class SchemeTag { S1, S2Sub1, S2Sub2 };

/// Ordered training reflections for one estimation scheme, plus the square
/// training matrices they were built from.
struct TrainingSchedule {
    struct Entry {
        VecC theta1;  // length M1
        VecC theta2;  // length M2
        SchemeTag tag;
    };
    std::vector<Entry> entries;
    MatC theta1;  // M1 x M1
    MatC theta2;  // M2 x M2
    bool unit_modulus = true;  // false for analysis-only matrices (e.g. identity)

    int length() const { return static_cast<int>(entries.size()); }
};

/// Received pilot symbols y[t] = theta2[t]^H H theta1[t] + z[t].
struct PilotObservation {
    VecC y;
    double sigma_sq = 0.0;
    bool is_scheme1 = false;
    int m1 = 0;
    int m2 = 0;

    /// Scheme-1 reshape Y_t = Theta2^H H Theta1 + Z_t (M2 x M1); throws for
    /// scheme-2 observations.
    MatC matrix() const;
};

/// DFT matrix [D]_{l,lt} = exp(-j*2*pi*(l-1)*(lt-1)/m); satisfies D D^H = m I.
MatC dft_matrix(int m);

/// Scheme 1: M1 sub-blocks; entry t = (i-1)*M2 + j carries
/// (column i of Theta1, column j of Theta2). Length M1*M2.
TrainingSchedule schedule_scheme1(int m1, int m2, const MatC& theta1, const MatC& theta2);
TrainingSchedule schedule_scheme1(int m1, int m2);  // DFT defaults

/// Scheme 2: M2 entries (1_{M1}, column j of Theta2), then M1 entries
/// (column i of Theta1, 1_{M2}). Length M1+M2.
TrainingSchedule schedule_scheme2(int m1, int m2, const MatC& theta1, const MatC& theta2);
TrainingSchedule schedule_scheme2(int m1, int m2);  // DFT defaults

/// Synthesize noisy pilots for a schedule; z i.i.d. CN(0, sigma_sq).
/// sigma_sq = 0 is the noise-free test mode (no RNG consumption).
PilotObservation observe(const MatC& H, const TrainingSchedule& sched, double sigma_sq, Rng& rng);

}  // namespace diris
