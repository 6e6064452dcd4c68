#pragma once

#include <span>
#include <vector>

#include "diris/training.hpp"

namespace diris {

/// Full-matrix LS estimate of the cascaded channel.
struct EstimateS1 {
    MatC H_hat;  // M2 x M1
    double sigma_sq = 0.0;
    MatC theta1;
    MatC theta2;
};

/// Rank-one signature estimate: HL_hat = rho_hat * u2 * u1_h.
/// rho_hat is meaningful only when degenerate == false.
struct EstimateS2 {
    RowVecC u1_h;  // length M1
    VecC u2;       // length M2
    cxd rho_hat{0.0, 0.0};
    MatC HL_hat;  // M2 x M1, rank one by construction
    bool degenerate = false;
};

/// LS inversion H_hat = (Theta2^H)^{-1} Y Theta1^{-1}; for scaled-unitary
/// training (e.g. DFT) the closed-form Theta2 Y Theta1^H / (M1 M2) is used.
EstimateS1 estimate_scheme1(const MatC& Y, const MatC& theta1, const MatC& theta2,
                            double sigma_sq);

/// sigma^2 * tr{(conj(Theta1) Theta1^T)^{-1}} * tr{(Theta2 Theta2^H)^{-1}};
/// equals sigma^2 for any scaled-unitary pair.
double mse_scheme1_theory(const MatC& theta1, const MatC& theta2, double sigma_sq);

/// Two sub-block inversion: u2_hat = (Theta2^H)^{-1} y1,
/// u1_hat^H = y2^T Theta1^{-1}, rho_hat = 2/(U1_hat + U2_hat) where U's are
/// the entry sums. Flags the estimate degenerate when |U1_hat + U2_hat| <=
/// threshold (default 1e-8 * max(||u1_h||, ||u2||)).
EstimateS2 estimate_scheme2(const VecC& y1, const VecC& y2, const MatC& theta1,
                            const MatC& theta2, double threshold = -1.0);

/// sigma^2 |rho_hat|^2 (||u2||^2 tr{(Theta1 Theta1^H)^{-1}} +
/// ||u1_h||^2 tr{(Theta2 Theta2^H)^{-1}}). Throws for degenerate estimates.
double mse_scheme2_approx(const EstimateS2& est, const MatC& theta1, const MatC& theta2,
                          double sigma_sq);

/// sum ||H_hat - H||_F^2 / sum ||H||_F^2 over paired lists.
double nmse(std::span<const MatC> h_hats, std::span<const MatC> hs);

}  // namespace diris
