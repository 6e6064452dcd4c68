#include "diris/training.hpp"

#include <Eigen/LU>
#include <stdexcept>

namespace diris {

namespace {

bool all_unit_modulus(const MatC& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (std::abs(std::abs(m(r, c)) - 1.0) > 1e-12) return false;
    return true;
}

void check_training_matrix(const MatC& t, int m, const char* name) {
    if (t.rows() != m || t.cols() != m)
        throw std::invalid_argument(std::string(name) + ": wrong dimensions");
    Eigen::FullPivLU<MatC> lu(t);
    if (!lu.isInvertible())
        throw std::invalid_argument(std::string(name) + ": singular training matrix");
}

}  // namespace

MatC dft_matrix(int m) {
    if (m < 1) throw std::invalid_argument("dft_matrix: m must be >= 1");
    MatC d(m, m);
    for (int l = 0; l < m; ++l)
        for (int lt = 0; lt < m; ++lt)
            d(l, lt) = std::polar(1.0, -2.0 * M_PI * ((l * lt) % m) / m);
    return d;
}

TrainingSchedule schedule_scheme1(int m1, int m2, const MatC& theta1, const MatC& theta2) {
    check_training_matrix(theta1, m1, "schedule_scheme1: Theta1");
    check_training_matrix(theta2, m2, "schedule_scheme1: Theta2");
    TrainingSchedule sched;
    sched.theta1 = theta1;
    sched.theta2 = theta2;
    sched.unit_modulus = all_unit_modulus(theta1) && all_unit_modulus(theta2);
    sched.entries.reserve(static_cast<std::size_t>(m1) * m2);
    for (int i = 0; i < m1; ++i)
        for (int j = 0; j < m2; ++j)
            sched.entries.push_back({theta1.col(i), theta2.col(j), SchemeTag::S1});
    return sched;
}

TrainingSchedule schedule_scheme1(int m1, int m2) {
    return schedule_scheme1(m1, m2, dft_matrix(m1), dft_matrix(m2));
}

TrainingSchedule schedule_scheme2(int m1, int m2, const MatC& theta1, const MatC& theta2) {
    check_training_matrix(theta1, m1, "schedule_scheme2: Theta1");
    check_training_matrix(theta2, m2, "schedule_scheme2: Theta2");
    TrainingSchedule sched;
    sched.theta1 = theta1;
    sched.theta2 = theta2;
    sched.unit_modulus = all_unit_modulus(theta1) && all_unit_modulus(theta2);
    sched.entries.reserve(static_cast<std::size_t>(m1) + m2);
    const VecC ones1 = VecC::Ones(m1);
    const VecC ones2 = VecC::Ones(m2);
    for (int j = 0; j < m2; ++j)
        sched.entries.push_back({ones1, theta2.col(j), SchemeTag::S2Sub1});
    for (int i = 0; i < m1; ++i)
        sched.entries.push_back({theta1.col(i), ones2, SchemeTag::S2Sub2});
    return sched;
}

TrainingSchedule schedule_scheme2(int m1, int m2) {
    return schedule_scheme2(m1, m2, dft_matrix(m1), dft_matrix(m2));
}

PilotObservation observe(const MatC& H, const TrainingSchedule& sched, double sigma_sq,
                         Rng& rng) {
    if (sigma_sq < 0.0) throw std::invalid_argument("observe: sigma_sq must be >= 0");
    if (sched.entries.empty()) throw std::invalid_argument("observe: empty schedule");
    PilotObservation obs;
    obs.sigma_sq = sigma_sq;
    obs.is_scheme1 = sched.entries.front().tag == SchemeTag::S1;
    obs.m1 = static_cast<int>(sched.theta1.rows());
    obs.m2 = static_cast<int>(sched.theta2.rows());
    obs.y.resize(sched.length());
    const double sigma = std::sqrt(sigma_sq);
    for (int t = 0; t < sched.length(); ++t) {
        const auto& e = sched.entries[static_cast<std::size_t>(t)];
        cxd y = effective_gain(H, e.theta1, e.theta2);
        if (sigma > 0.0) y += sigma * rng.cnormal();
        obs.y(t) = y;
    }
    return obs;
}

MatC PilotObservation::matrix() const {
    if (!is_scheme1)
        throw std::logic_error("PilotObservation::matrix: not a scheme-1 observation");
    // Entry t = i*M2 + j lands at (j, i): column i is sub-block i.
    return Eigen::Map<const MatC>(y.data(), m2, m1);
}

}  // namespace diris
