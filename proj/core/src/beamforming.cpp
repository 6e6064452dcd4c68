#include "diris/beamforming.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace diris {

namespace {

double objective_of(const MatC& H, const VecC& phi1, const VecC& phi2) {
    return std::norm(effective_gain(H, phi1, phi2));
}

// Rotate so the first non-negligible component is real positive.
void normalize_phase(VecC& v) {
    const double tol = 1e-14 * v.norm();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > tol) {
            v *= std::conj(v(i)) / a;
            return;
        }
    }
}

}  // namespace

VecC phase_align(const VecC& v) {
    VecC out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        out(i) = a == 0.0 ? cxd{1.0, 0.0} : v(i) / a;
    }
    return out;
}

BeamformingPair svd_init(const MatC& H_hat) {
    if (H_hat.norm() == 0.0) throw std::invalid_argument("svd_init: all-zero matrix");
    Eigen::JacobiSVD<MatC> svd(H_hat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    VecC d = svd.matrixU().col(0);  // strongest left singular vector
    VecC f = svd.matrixV().col(0);  // strongest right singular vector
    normalize_phase(d);
    normalize_phase(f);
    BeamformingPair pair;
    pair.phi1 = phase_align(f);
    pair.phi2 = phase_align(d);
    pair.objective = objective_of(H_hat, pair.phi1, pair.phi2);
    pair.iterations = 0;
    return pair;
}

BeamformingPair ao_optimize(const MatC& H_hat, const AoOptions& opts,
                            std::vector<double>* half_step_trace) {
    if (opts.max_iters < 1) throw std::invalid_argument("ao_optimize: max_iters must be >= 1");
    BeamformingPair pair = svd_init(H_hat);
    if (half_step_trace) half_step_trace->push_back(pair.objective);

    double prev = pair.objective;
    for (int it = 1; it <= opts.max_iters; ++it) {
        pair.phi2 = phase_align(H_hat * pair.phi1);
        if (half_step_trace)
            half_step_trace->push_back(objective_of(H_hat, pair.phi1, pair.phi2));
        pair.phi1 = phase_align(H_hat.adjoint() * pair.phi2);
        pair.objective = objective_of(H_hat, pair.phi1, pair.phi2);
        if (half_step_trace) half_step_trace->push_back(pair.objective);
        pair.iterations = it;
        if (pair.objective - prev <= opts.rel_tol * std::max(prev, 1e-300)) break;
        prev = pair.objective;
    }
    return pair;
}

double expected_gain_s1(const BeamformingPair& pair, const MatC& H_hat, double sigma_sq) {
    return objective_of(H_hat, pair.phi1, pair.phi2) + sigma_sq;
}

BeamformingPair beamform_s2(const EstimateS2& est) {
    if (est.degenerate) throw std::invalid_argument("beamform_s2: degenerate estimate");
    BeamformingPair pair;
    pair.phi1 = phase_align(est.u1_h.adjoint());  // align with u1
    pair.phi2 = phase_align(est.u2);
    pair.objective = objective_of(est.HL_hat, pair.phi1, pair.phi2);
    pair.iterations = 0;
    return pair;
}

double expected_gain_s2(const BeamformingPair& pair, const EstimateS2& est, double sigma_sq) {
    if (est.degenerate) throw std::domain_error("expected_gain_s2: degenerate estimate");
    const double g2 = std::norm(pair.phi2.dot(est.u2));                       // |phi2^H u2|^2
    const double g1 = std::norm(est.u1_h.cwiseProduct(pair.phi1.transpose()).sum());  // |u1^H phi1|^2
    return std::norm(est.rho_hat) * (g2 * g1 + sigma_sq * (g2 + g1));
}

double receive_snr(const MatC& H_true, const BeamformingPair& pair, double sigma_sq) {
    if (!(sigma_sq > 0.0)) throw std::domain_error("receive_snr: sigma_sq must be > 0");
    return objective_of(H_true, pair.phi1, pair.phi2) / sigma_sq;
}

double achievable_rate(const MatC& H_true, const BeamformingPair& pair, const RateParams& rp) {
    if (rp.T_t < 0 || rp.T_t > rp.T)
        throw std::invalid_argument("achievable_rate: need 0 <= T_t <= T");
    if (!(rp.sigma_sq > 0.0)) throw std::domain_error("achievable_rate: sigma_sq must be > 0");
    if (rp.Gamma < 1.0) throw std::invalid_argument("achievable_rate: Gamma must be >= 1");
    const double snr = objective_of(H_true, pair.phi1, pair.phi2) / (rp.Gamma * rp.sigma_sq);
    return (static_cast<double>(rp.T - rp.T_t) / rp.T) * std::log2(1.0 + snr);
}

}  // namespace diris
