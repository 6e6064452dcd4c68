#pragma once

#include "diris/beamforming.hpp"

namespace diris {

/// Group-wise single-reflection cascade of the comparison deployment that
/// puts all M1+M2 sub-surfaces at the IRS 1 location.
struct SingleIrsRealization {
    VecC h;  // length M1+M2
    double alpha_single = 0.0;  // config echo
    double K_U = 0.0;
};

/// Pure assembler (test hook): entrywise product of the element-wise
/// user-side and AP-side links, grouped by n0.
VecC cascade_single_irs(const VecC& g_user_elem, const VecC& g_ap_elem, int n0);

/// User side Rician(K_U, alpha_U) over the user-IRS1 distance; AP side
/// Rayleigh with exponent alpha_single over the IRS1-AP distance.
SingleIrsRealization realize_single_irs(const ScenarioConfig& cfg, Rng& rng);

/// LS estimate from 2M pilots with DFT training: y = D^H h + z,
/// h_hat = (D^H)^{-1} y.
VecC estimate_single_irs(const VecC& h, double sigma_sq, Rng& rng);

struct SingleIrsBeam {
    VecC theta;
    bool degenerate = false;  // all-zero estimate
};

/// CGM phase alignment for the data model y = h^T theta:
/// theta = phase_align(conj(h_hat)), gain (sum |h_i|)^2 at a perfect estimate.
SingleIrsBeam beamform_single_irs(const VecC& h_hat);

/// |h_true^T theta|^2 achieved against the true channel.
double single_irs_gain(const VecC& h_true, const SingleIrsBeam& beam);

/// Upper bound: AO directly on the true cascaded channel (no training, so
/// its rate uses T_t = 0).
BeamformingPair perfect_csi_bound(const MatC& H_true, const AoOptions& opts = {});

}  // namespace diris
