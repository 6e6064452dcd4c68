#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "diris/baselines.hpp"

namespace diris {

/// Scheme ids are part of the seeding contract (see trial_seed) and must
/// not be reordered.
enum class Scheme : std::uint64_t { S1 = 1, S2 = 2, Single = 3, Perfect = 4 };

enum class SweepKind { RicianNmse, RicianSnr, RateVsM, RateVsPower, Custom };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);
std::string sweep_name(SweepKind k);
SweepKind sweep_from_name(const std::string& name);

/// A Monte Carlo sweep: for each sweep value and scheme, n_trials seeded
/// trials. Sweep values are in figure-axis units (dB for Rician factors,
/// dBm for power, a count for M) and are applied to the scenario at the
/// config boundary.
struct ExperimentConfig {
    ScenarioConfig scenario;
    SweepKind sweep = SweepKind::Custom;
    std::vector<double> sweep_values;
    int n_trials = 500;
    std::uint64_t master_seed = 1;
    std::vector<Scheme> schemes;
    /// Coherence-block lengths to evaluate rates at (empty = scenario.T).
    std::vector<int> coherence_times;
};

/// Per-trial outputs of one scheme pipeline on one channel realization.
struct TrialMetrics {
    bool degenerate = false;
    double err_sq = 0.0;      // ||H_hat - H||_F^2 (0 when no estimate)
    double chan_sq = 0.0;     // ||H||_F^2
    double mse_approx = 0.0;  // scheme-2 theory value (0 otherwise)
    double gain = 0.0;        // |phi2^H H_true phi1|^2
    int t_train = 0;
};

/// One fading block end to end: realize channels, train, estimate, beamform,
/// evaluate against the true channel. Deterministic given seed.
TrialMetrics run_trial(std::uint64_t seed, const ScenarioConfig& cfg, Scheme scheme);

struct SweepRow {
    double sweep_value = 0.0;
    std::string scheme;
    std::string metric;
    double mean = 0.0;
    double stderr_ = 0.0;
    long n_valid = 0;
    long n_degenerate = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

/// Run all cells; trials may execute on n_threads, results are bitwise
/// independent of the thread count (per-trial seeds from trial_seed,
/// aggregation in fixed trial order).
SweepResult run_sweep(const ExperimentConfig& cfg, int n_threads = 1);

/// CSV with header sweep_value,scheme,metric,mean,stderr,n_valid,n_degenerate,
/// full-precision floats, rows sorted by (sweep_value, scheme, metric).
void emit_csv(const SweepResult& result, const std::filesystem::path& path);
SweepResult parse_csv(const std::filesystem::path& path);

/// Bundled presets on the default scenario.
ExperimentConfig fig2a_config();  // NMSE vs K_I, schemes S1/S2 + theory curves
ExperimentConfig fig2b_config();  // receive SNR vs K_I, all schemes
ExperimentConfig fig3a_config();  // rate vs M at T in {150,400}
ExperimentConfig fig3b_config();  // rate vs transmit power at M=6

std::string experiment_to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_from_json(const std::string& text);

}  // namespace diris
