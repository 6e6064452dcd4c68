#pragma once

#include <array>
#include <cmath>
#include <string>

namespace diris {

/// One record that drives everything: geometry, surface sizes, Rician
/// factors, path-loss law and the link budget. All values are linear
/// (dB/dBm conversions happen only at the config boundary).
struct ScenarioConfig {
    std::array<double, 3> user_pos{};  // meters
    std::array<double, 3> ap_pos{};
    std::array<double, 3> irs1_pos{};
    std::array<double, 3> irs2_pos{};
    double irs1_azimuth = 0.0;  // radians w.r.t. x-axis (panel heading)
    double irs2_azimuth = 0.0;
    int M1 = 1;  // sub-surfaces on IRS 1
    int M2 = 1;  // sub-surfaces on IRS 2
    int N0 = 1;  // elements per sub-surface
    double K_U = 0.0;  // Rician factors, linear
    double K_I = 0.0;
    double K_A = 0.0;
    double beta0 = 1.0;  // reference gain at d0, linear
    double d0 = 1.0;     // meters
    double alpha_U = 2.0;  // path-loss exponents
    double alpha_I = 2.0;
    double alpha_A = 2.0;
    double alpha_single = 2.0;
    double P = 1.0;          // transmit power, Watts
    double sigma0_sq = 0.0;  // noise power, Watts
    double Gamma = 1.0;      // rate gap, linear
    int T = 1;               // coherence-block length, symbols

    int n1() const { return M1 * N0; }
    int n2() const { return M2 * N0; }

    /// Normalized noise power sigma^2 = sigma0^2 / P.
    double sigma_sq() const { return sigma0_sq / P; }

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// Bundled default scenario: the corridor deployment used by all presets.
/// user (1,20,0), AP (1,0,0), IRS1 (0,20,0), IRS2 (0,0,0); azimuths 130/30
/// degrees; M1=M2=6 sub-surfaces of N0=10 elements; K_U=K_A=20 dB,
/// K_I=20 dB; beta0=-35 dB at 1 m; alphas 2.2/2.4/2.2 and 4 for the
/// single-IRS hop; Gamma=9 dB; sigma0^2=-79 dBm; P=20 dBm; T=150.
ScenarioConfig default_scenario();

/// Canonical JSON with exactly the documented field names, stable key order.
std::string scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig scenario_from_json(const std::string& text);

}  // namespace diris
