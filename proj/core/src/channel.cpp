#include "diris/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace diris {

namespace {

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double dx = b[0] - a[0], dy = b[1] - a[1], dz = b[2] - a[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Incidence cosine of the link a -> b on a vertical (z-stacked) array at a.
double z_cosine(const std::array<double, 3>& a, const std::array<double, 3>& b, double d) {
    return (b[2] - a[2]) / d;
}

}  // namespace

double path_loss(double d, double alpha, const ScenarioConfig& cfg) {
    if (!(d > 0.0)) throw std::domain_error("path_loss: distance must be > 0");
    return cfg.beta0 * std::pow(d / cfg.d0, -alpha);
}

VecC array_response(int n_elems, double spacing, double incidence_cosine) {
    if (n_elems < 1) throw std::invalid_argument("array_response: n_elems must be >= 1");
    if (std::abs(incidence_cosine) > 1.0)
        throw std::invalid_argument("array_response: |incidence_cosine| must be <= 1");
    VecC v(n_elems);
    for (int n = 0; n < n_elems; ++n)
        v(n) = std::polar(1.0, -M_PI * spacing * n * incidence_cosine);
    return v;
}

MatC draw_rician(const MatC& los, double K, Rng& rng) {
    if (K < 0.0) throw std::invalid_argument("draw_rician: K must be >= 0");
    const double c_los = std::sqrt(K / (1.0 + K));
    const double c_nlos = std::sqrt(1.0 / (1.0 + K));
    MatC out(los.rows(), los.cols());
    for (Eigen::Index c = 0; c < los.cols(); ++c)
        for (Eigen::Index r = 0; r < los.rows(); ++r)
            out(r, c) = c_los * los(r, c) + c_nlos * rng.cnormal();
    return out;
}

ElementwiseChannels realize_channels(const ScenarioConfig& cfg, Rng& rng) {
    cfg.validate();
    const double d_u = distance(cfg.user_pos, cfg.irs1_pos);
    const double d_i = distance(cfg.irs1_pos, cfg.irs2_pos);
    const double d_a = distance(cfg.irs2_pos, cfg.ap_pos);
    if (!(d_u > 0.0 && d_i > 0.0 && d_a > 0.0))
        throw std::domain_error("realize_channels: coincident endpoints");

    const int n1 = cfg.n1();
    const int n2 = cfg.n2();
    const VecC a_user = array_response(n1, 1.0, z_cosine(cfg.irs1_pos, cfg.user_pos, d_u));
    const VecC q1 = array_response(n1, 1.0, z_cosine(cfg.irs1_pos, cfg.irs2_pos, d_i));
    const VecC q2 = array_response(n2, 1.0, z_cosine(cfg.irs2_pos, cfg.irs1_pos, d_i));
    const VecC a_ap = array_response(n2, 1.0, z_cosine(cfg.irs2_pos, cfg.ap_pos, d_a));

    ElementwiseChannels ch;
    ch.los.q1 = q1;
    ch.los.q2 = q2;
    ch.los.s = std::polar(1.0, rng.phase());

    const double rt_bu = std::sqrt(path_loss(d_u, cfg.alpha_U, cfg));
    const double rt_bi = std::sqrt(path_loss(d_i, cfg.alpha_I, cfg));
    const double rt_ba = std::sqrt(path_loss(d_a, cfg.alpha_A, cfg));

    ch.g_U = rt_bu * draw_rician(a_user, cfg.K_U, rng);
    ch.g_A = rt_ba * draw_rician(a_ap, cfg.K_A, rng);
    ch.G_I = rt_bi * draw_rician(ch.los.s * q2 * q1.adjoint(), cfg.K_I, rng);
    return ch;
}

MatC cascade_elementwise(const ElementwiseChannels& ch) {
    if (ch.G_I.rows() != ch.g_A.size() || ch.G_I.cols() != ch.g_U.size())
        throw std::invalid_argument("cascade_elementwise: dimension mismatch");
    return ch.g_A.asDiagonal() * ch.G_I * ch.g_U.asDiagonal();
}

MatC group_channel(const MatC& h_bar, int n0) {
    if (n0 < 1 || h_bar.rows() % n0 != 0 || h_bar.cols() % n0 != 0)
        throw std::invalid_argument("group_channel: dimensions not divisible by N0");
    const Eigen::Index m2 = h_bar.rows() / n0;
    const Eigen::Index m1 = h_bar.cols() / n0;
    MatC h(m2, m1);
    for (Eigen::Index j = 0; j < m2; ++j)
        for (Eigen::Index i = 0; i < m1; ++i)
            h(j, i) = h_bar.block(j * n0, i * n0, n0, n0).sum();
    return h;
}

VecC group_vector(const VecC& v, int n0) {
    if (n0 < 1 || v.size() % n0 != 0)
        throw std::invalid_argument("group_vector: length not divisible by N0");
    const Eigen::Index m = v.size() / n0;
    VecC g(m);
    for (Eigen::Index i = 0; i < m; ++i) g(i) = v.segment(i * n0, n0).sum();
    return g;
}

cxd effective_gain(const MatC& H, const VecC& theta1, const VecC& theta2) {
    if (H.cols() != theta1.size() || H.rows() != theta2.size())
        throw std::invalid_argument("effective_gain: dimension mismatch");
    return theta2.dot(H * theta1);
}

CascadedChannel cascaded(const ScenarioConfig& cfg, const ElementwiseChannels& ch) {
    CascadedChannel out;
    out.H = group_channel(cascade_elementwise(ch), cfg.N0);
    return out;
}

CascadedChannel los_cascade(const ScenarioConfig& cfg, const ElementwiseChannels& ch) {
    const double d_i = distance(cfg.irs1_pos, cfg.irs2_pos);
    const double scale =
        std::sqrt(path_loss(d_i, cfg.alpha_I, cfg) * (cfg.K_I / (1.0 + cfg.K_I)));

    const VecC v1_bar = ch.los.q1.conjugate().cwiseProduct(ch.g_U);  // entries of v1_bar^H
    const VecC v2_bar = scale * ch.los.s * ch.g_A.cwiseProduct(ch.los.q2);

    CascadedChannel out;
    CascadedChannel::LosForm lf;
    lf.v1_h = group_vector(v1_bar, cfg.N0).transpose();
    lf.v2 = group_vector(v2_bar, cfg.N0);
    out.H = lf.v2 * lf.v1_h;
    out.los_form = std::move(lf);
    return out;
}

}  // namespace diris
