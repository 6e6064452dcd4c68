#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "diris/rng.hpp"
#include "diris/scenario.hpp"

namespace diris {

using cxd = std::complex<double>;
using VecC = Eigen::VectorXcd;
using RowVecC = Eigen::RowVectorXcd;
using MatC = Eigen::MatrixXcd;

/// Deterministic LoS factors of a realization: q1/q2 are the unit-modulus
/// inter-surface response vectors, s the unit-magnitude path phase of the
/// inter-IRS link (path loss is carried separately by sqrt(beta_I)).
struct LosFactors {
    VecC q1;  // length N1, at IRS 1 toward IRS 2
    VecC q2;  // length N2, at IRS 2 toward IRS 1
    cxd s{1.0, 0.0};
};

/// The three element-wise physical links of one fading block.
struct ElementwiseChannels {
    VecC g_U;  // user -> IRS 1, length N1
    MatC G_I;  // IRS 1 -> IRS 2, N2 x N1
    VecC g_A;  // IRS 2 -> AP, length N2
    LosFactors los;
};

/// Group-wise cascaded channel H (M2 x M1). When built from the rank-one
/// LoS reduction, los_form carries the two signature vectors with
/// H = v2 * v1_h.
struct CascadedChannel {
    MatC H;
    struct LosForm {
        RowVecC v1_h;  // length M1
        VecC v2;       // length M2
    };
    std::optional<LosForm> los_form;
};

/// Distance-dependent power gain beta0 * (d/d0)^(-alpha). d must be > 0.
double path_loss(double d, double alpha, const ScenarioConfig& cfg);

/// ULA steering vector, entry n = exp(-j*pi*spacing*(n-1)*incidence_cosine)
/// with spacing in half-wavelengths. Requires |incidence_cosine| <= 1.
VecC array_response(int n_elems, double spacing, double incidence_cosine);

/// sqrt(K/(1+K)) * los + sqrt(1/(1+K)) * W, W i.i.d. CN(0,1). The LoS input
/// is expected unit-modulus; path loss is applied by the caller.
MatC draw_rician(const MatC& los, double K, Rng& rng);

/// Draw all three links for one block. Elements are stacked vertically
/// (z-axis) at half-wavelength spacing, so incidence cosines come from the
/// z-components of the link directions; the inter-IRS LoS is s*q2*q1^H with
/// s a uniform random phase. Deterministic given the RNG stream.
ElementwiseChannels realize_channels(const ScenarioConfig& cfg, Rng& rng);

/// Element-wise cascade H_bar = diag(g_A) * G_I * diag(g_U), N2 x N1.
MatC cascade_elementwise(const ElementwiseChannels& ch);

/// Group-wise reduction: [H]_{j,i} sums the (i,j)-th N0 x N0 block of H_bar.
MatC group_channel(const MatC& h_bar, int n0);

/// Same block-sum rule in one dimension.
VecC group_vector(const VecC& v, int n0);

/// Equivalent SISO gain g = theta2^H * H * theta1.
cxd effective_gain(const MatC& H, const VecC& theta1, const VecC& theta2);

/// Group the element-wise cascade of a realization.
CascadedChannel cascaded(const ScenarioConfig& cfg, const ElementwiseChannels& ch);

/// Rank-one reduction obtained by replacing G_I with its LoS part:
/// v1_h = group(q1^H diag(g_U)), v2 = group(diag(g_A) * c * s * q2) with
/// c = sqrt(beta_I * K_I/(1+K_I)); returns H = v2 * v1_h with los_form set.
CascadedChannel los_cascade(const ScenarioConfig& cfg, const ElementwiseChannels& ch);

}  // namespace diris
