#include "diris/estimation.hpp"

#include <Eigen/LU>
#include <stdexcept>

namespace diris {

namespace {

void check_invertible(const MatC& t, const char* name) {
    Eigen::FullPivLU<MatC> lu(t);
    if (!lu.isInvertible()) throw std::invalid_argument(std::string(name) + ": singular matrix");
}

// Theta * Theta^H == m * I within tolerance (DFT and friends).
bool scaled_unitary(const MatC& t) {
    const double m = static_cast<double>(t.rows());
    return (t * t.adjoint() - m * MatC::Identity(t.rows(), t.rows())).norm() <= 1e-9 * m;
}

// tr{(T T^H)^{-1}}; 1 for any scaled-unitary matrix.
double trace_inv_gram(const MatC& t) {
    if (scaled_unitary(t)) return 1.0;
    const MatC gram = t * t.adjoint();
    return gram.partialPivLu().inverse().trace().real();
}

}  // namespace

EstimateS1 estimate_scheme1(const MatC& Y, const MatC& theta1, const MatC& theta2,
                            double sigma_sq) {
    if (Y.rows() != theta2.rows() || Y.cols() != theta1.rows())
        throw std::invalid_argument("estimate_scheme1: dimension mismatch");
    check_invertible(theta1, "estimate_scheme1: Theta1");
    check_invertible(theta2, "estimate_scheme1: Theta2");

    EstimateS1 est;
    est.sigma_sq = sigma_sq;
    est.theta1 = theta1;
    est.theta2 = theta2;
    if (scaled_unitary(theta1) && scaled_unitary(theta2)) {
        est.H_hat = (theta2 * Y * theta1.adjoint()) /
                    static_cast<double>(theta1.rows() * theta2.rows());
    } else {
        const MatC a = theta2.adjoint().partialPivLu().solve(Y);
        est.H_hat = theta1.transpose().partialPivLu().solve(a.transpose()).transpose();
    }
    return est;
}

double mse_scheme1_theory(const MatC& theta1, const MatC& theta2, double sigma_sq) {
    check_invertible(theta1, "mse_scheme1_theory: Theta1");
    check_invertible(theta2, "mse_scheme1_theory: Theta2");
    // tr{(conj(T1) T1^T)^{-1}} equals tr{(T1 T1^H)^{-1}} (conjugate of a real trace).
    return sigma_sq * trace_inv_gram(theta1) * trace_inv_gram(theta2);
}

EstimateS2 estimate_scheme2(const VecC& y1, const VecC& y2, const MatC& theta1,
                            const MatC& theta2, double threshold) {
    if (y1.size() != theta2.rows() || y2.size() != theta1.rows())
        throw std::invalid_argument("estimate_scheme2: dimension mismatch");
    check_invertible(theta1, "estimate_scheme2: Theta1");
    check_invertible(theta2, "estimate_scheme2: Theta2");

    EstimateS2 est;
    if (scaled_unitary(theta2)) {
        est.u2 = theta2 * y1 / static_cast<double>(theta2.rows());
    } else {
        est.u2 = theta2.adjoint().partialPivLu().solve(y1);
    }
    // u1_h = y2^T Theta1^{-1}  <=>  u1_h^T = Theta1^{-T} y2; for scaled-unitary
    // Theta1 the inverse transpose is conj(Theta1)/M1.
    if (scaled_unitary(theta1)) {
        est.u1_h = (theta1.conjugate() * y2 / static_cast<double>(theta1.rows())).transpose();
    } else {
        est.u1_h = theta1.transpose().partialPivLu().solve(y2).transpose();
    }

    const cxd u1_sum = est.u1_h.sum();
    const cxd u2_sum = est.u2.sum();
    const cxd denom = u1_sum + u2_sum;
    const double thr = threshold >= 0.0
                           ? threshold
                           : 1e-8 * std::max(est.u1_h.norm(), est.u2.norm());
    est.degenerate = std::abs(denom) <= thr;
    est.rho_hat = est.degenerate ? cxd{0.0, 0.0} : 2.0 / denom;
    est.HL_hat = est.rho_hat * est.u2 * est.u1_h;
    return est;
}

double mse_scheme2_approx(const EstimateS2& est, const MatC& theta1, const MatC& theta2,
                          double sigma_sq) {
    if (est.degenerate)
        throw std::domain_error("mse_scheme2_approx: degenerate estimate");
    const double rho2 = std::norm(est.rho_hat);
    return sigma_sq * rho2 *
           (est.u2.squaredNorm() * trace_inv_gram(theta1) +
            est.u1_h.squaredNorm() * trace_inv_gram(theta2));
}

double nmse(std::span<const MatC> h_hats, std::span<const MatC> hs) {
    if (h_hats.empty() || h_hats.size() != hs.size())
        throw std::invalid_argument("nmse: lists must be nonempty and equal length");
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        err += (h_hats[i] - hs[i]).squaredNorm();
        ref += hs[i].squaredNorm();
    }
    return err / ref;
}

}  // namespace diris
