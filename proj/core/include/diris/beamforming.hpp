#pragma once

#include <vector>

#include "diris/estimation.hpp"

namespace diris {

/// Unit-modulus reflection pair for data transmission plus the objective
/// |phi2^H H_hat phi1|^2 it achieved.
struct BeamformingPair {
    VecC phi1;  // length M1
    VecC phi2;  // length M2
    double objective = 0.0;
    int iterations = 0;
};

struct RateParams {
    int T = 1;          // coherence-block length, symbols
    int T_t = 0;        // training symbols
    double Gamma = 1.0; // rate gap, linear
    double sigma_sq = 0.0;
};

struct AoOptions {
    int max_iters = 50;
    double rel_tol = 1e-6;
};

/// Entrywise v_i / |v_i|; zero entries map to 1.
VecC phase_align(const VecC& v);

/// Initialize from the strongest singular pair of H_hat: phi1 aligns with
/// the right singular vector, phi2 with the left. Singular vectors are
/// phase-normalized (first nonzero component real positive) so ties resolve
/// deterministically. Throws on an all-zero matrix.
BeamformingPair svd_init(const MatC& H_hat);

/// Alternating optimization from svd_init: phi2 <- align(H phi1),
/// phi1 <- align(H^H phi2). Each half-step is the exact optimum of its
/// subproblem, so the objective is non-decreasing; stops on relative gain
/// < rel_tol or max_iters. half_step_trace (optional) receives the
/// objective after init and after every half-step.
BeamformingPair ao_optimize(const MatC& H_hat, const AoOptions& opts = {},
                            std::vector<double>* half_step_trace = nullptr);

/// Expected equivalent SISO power gain |phi2^H H_hat phi1|^2 + sigma^2.
double expected_gain_s1(const BeamformingPair& pair, const MatC& H_hat, double sigma_sq);

/// Closed-form pair for the rank-one estimate: phi1 = align(u1),
/// phi2 = align(u2); objective recorded against HL_hat.
BeamformingPair beamform_s2(const EstimateS2& est);

/// |rho|^2 [ |phi2^H u2|^2 |u1^H phi1|^2
///           + sigma^2 (|phi2^H u2|^2 + |u1^H phi1|^2) ].
double expected_gain_s2(const BeamformingPair& pair, const EstimateS2& est, double sigma_sq);

/// |phi2^H H_true phi1|^2 / sigma_sq. Requires sigma_sq > 0.
double receive_snr(const MatC& H_true, const BeamformingPair& pair, double sigma_sq);

/// ((T - T_t)/T) * log2(1 + |phi2^H H_true phi1|^2 / (Gamma sigma^2)).
double achievable_rate(const MatC& H_true, const BeamformingPair& pair, const RateParams& rp);

}  // namespace diris
