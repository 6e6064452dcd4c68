#include "diris/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace diris {

namespace {

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double dx = b[0] - a[0], dy = b[1] - a[1], dz = b[2] - a[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

VecC cascade_single_irs(const VecC& g_user_elem, const VecC& g_ap_elem, int n0) {
    if (g_user_elem.size() != g_ap_elem.size())
        throw std::invalid_argument("cascade_single_irs: dimension mismatch");
    return group_vector(g_user_elem.cwiseProduct(g_ap_elem), n0);
}

SingleIrsRealization realize_single_irs(const ScenarioConfig& cfg, Rng& rng) {
    cfg.validate();
    const double d_u = distance(cfg.user_pos, cfg.irs1_pos);
    const double d_a = distance(cfg.irs1_pos, cfg.ap_pos);
    if (!(d_u > 0.0 && d_a > 0.0))
        throw std::domain_error("realize_single_irs: coincident endpoints");

    const int n = (cfg.M1 + cfg.M2) * cfg.N0;
    const double cos_u = (cfg.user_pos[2] - cfg.irs1_pos[2]) / d_u;
    const VecC a_user = array_response(n, 1.0, cos_u);

    const double rt_bu = std::sqrt(path_loss(d_u, cfg.alpha_U, cfg));
    const double rt_bs = std::sqrt(path_loss(d_a, cfg.alpha_single, cfg));

    const VecC g_user = rt_bu * draw_rician(a_user, cfg.K_U, rng);
    // Rayleigh IRS-AP hop: K = 0 makes the LoS argument irrelevant.
    const VecC g_ap = rt_bs * draw_rician(VecC::Ones(n), 0.0, rng);

    SingleIrsRealization out;
    out.h = cascade_single_irs(g_user, g_ap, cfg.N0);
    out.alpha_single = cfg.alpha_single;
    out.K_U = cfg.K_U;
    return out;
}

VecC estimate_single_irs(const VecC& h, double sigma_sq, Rng& rng) {
    const int m = static_cast<int>(h.size());
    if (m < 1) throw std::invalid_argument("estimate_single_irs: empty channel");
    const MatC d = dft_matrix(m);
    VecC y = d.adjoint() * h;
    if (sigma_sq > 0.0) {
        const double sigma = std::sqrt(sigma_sq);
        for (int i = 0; i < m; ++i) y(i) += sigma * rng.cnormal();
    }
    return d * y / static_cast<double>(m);  // (D^H)^{-1} = D / m
}

SingleIrsBeam beamform_single_irs(const VecC& h_hat) {
    SingleIrsBeam beam;
    beam.degenerate = h_hat.size() == 0 || h_hat.norm() == 0.0;
    beam.theta = phase_align(h_hat.conjugate());
    return beam;
}

double single_irs_gain(const VecC& h_true, const SingleIrsBeam& beam) {
    if (h_true.size() != beam.theta.size())
        throw std::invalid_argument("single_irs_gain: dimension mismatch");
    return std::norm(h_true.cwiseProduct(beam.theta).sum());
}

BeamformingPair perfect_csi_bound(const MatC& H_true, const AoOptions& opts) {
    return ao_optimize(H_true, opts);
}

}  // namespace diris
