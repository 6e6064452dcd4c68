#include "diris/experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace diris;
using diris::test::rel_err;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path tmp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

const SweepRow& find_row(const SweepResult& r, double value, const std::string& scheme,
                         const std::string& metric) {
    for (const auto& row : r.rows)
        if (row.sweep_value == value && row.scheme == scheme && row.metric == metric)
            return row;
    throw std::runtime_error("row not found: " + scheme + "/" + metric);
}

}  // namespace

TEST_CASE("trial_seed derives distinct, stable streams") {
    CHECK(trial_seed(1, 0, 0, 1) == trial_seed(1, 0, 0, 1));
    CHECK(trial_seed(1, 0, 0, 1) != trial_seed(2, 0, 0, 1));
    CHECK(trial_seed(1, 0, 0, 1) != trial_seed(1, 1, 0, 1));
    CHECK(trial_seed(1, 0, 0, 1) != trial_seed(1, 0, 1, 1));
    CHECK(trial_seed(1, 0, 0, 1) != trial_seed(1, 0, 0, 2));
}

TEST_CASE("run_trial is deterministic and reuses the channel across schemes") {
    const ScenarioConfig cfg = diris::test::small_scenario();
    const std::uint64_t seed = trial_seed(3, 1, 4, 1);
    const TrialMetrics a = run_trial(seed, cfg, Scheme::S1);
    const TrialMetrics b = run_trial(seed, cfg, Scheme::S1);
    CHECK(a.gain == b.gain);
    CHECK(a.err_sq == b.err_sq);
    CHECK(a.chan_sq == b.chan_sq);

    // Same seed, different scheme: identical channel energy.
    const TrialMetrics c = run_trial(seed, cfg, Scheme::Perfect);
    CHECK(a.chan_sq == c.chan_sq);
}

TEST_CASE("vanishing noise makes scheme 1 meet the perfect-CSI beamformer") {
    ScenarioConfig cfg = diris::test::small_scenario();
    cfg.sigma0_sq = 1e-40;
    const std::uint64_t seed = trial_seed(5, 0, 2, 0);
    const TrialMetrics s1 = run_trial(seed, cfg, Scheme::S1);
    const TrialMetrics perfect = run_trial(seed, cfg, Scheme::Perfect);
    CHECK(rel_err(s1.gain, perfect.gain) < 1e-6);
}

TEST_CASE("scheme 2 tracks the bound at the default scenario (smoke)") {
    const ScenarioConfig cfg = default_scenario();
    double s2 = 0.0, perfect = 0.0;
    int n = 0;
    for (int t = 0; t < 60; ++t) {
        const TrialMetrics m = run_trial(trial_seed(11, 0, t, 2), cfg, Scheme::S2);
        if (m.degenerate) continue;
        s2 += m.gain;
        perfect += run_trial(trial_seed(11, 0, t, 4), cfg, Scheme::Perfect).gain;
        ++n;
    }
    REQUIRE(n > 0);
    CHECK(10.0 * std::log10(perfect / s2) < 3.0);
}

TEST_CASE("run_sweep smoke: one row set per cell at n_trials=1") {
    ExperimentConfig ec = fig2a_config();
    ec.n_trials = 1;
    ec.sweep_values = {0.0, 20.0};
    const SweepResult r = run_sweep(ec, 1);
    CHECK_NOTHROW(find_row(r, 0.0, "S1", "nmse_mc"));
    CHECK_NOTHROW(find_row(r, 0.0, "S1", "nmse_theory"));
    CHECK_NOTHROW(find_row(r, 20.0, "S2", "nmse_mc"));
    CHECK_NOTHROW(find_row(r, 20.0, "S2", "nmse_theory"));
    for (const auto& row : r.rows) CHECK(row.n_valid + row.n_degenerate == 1);
}

TEST_CASE("run_sweep is bitwise thread-count independent") {
    ExperimentConfig ec = fig2b_config();
    ec.n_trials = 20;
    ec.sweep_values = {-10.0, 10.0, 30.0};
    const SweepResult r1 = run_sweep(ec, 1);
    const SweepResult r4 = run_sweep(ec, 4);
    REQUIRE(r1.rows.size() == r4.rows.size());
    for (std::size_t i = 0; i < r1.rows.size(); ++i) {
        CHECK(r1.rows[i].sweep_value == r4.rows[i].sweep_value);
        CHECK(r1.rows[i].scheme == r4.rows[i].scheme);
        CHECK(r1.rows[i].metric == r4.rows[i].metric);
        CHECK(r1.rows[i].mean == r4.rows[i].mean);          // bitwise
        CHECK(r1.rows[i].stderr_ == r4.rows[i].stderr_);    // bitwise
        CHECK(r1.rows[i].n_valid == r4.rows[i].n_valid);
    }
    const auto pa = tmp_file("diris_threads1.csv"), pb = tmp_file("diris_threads4.csv");
    emit_csv(r1, pa);
    emit_csv(r4, pb);
    CHECK(slurp(pa) == slurp(pb));
    std::filesystem::remove(pa);
    std::filesystem::remove(pb);
}

TEST_CASE("emit_csv") {
    SUBCASE("empty result writes the header only") {
        const auto p = tmp_file("diris_empty.csv");
        emit_csv(SweepResult{}, p);
        CHECK(slurp(p) == "sweep_value,scheme,metric,mean,stderr,n_valid,n_degenerate\n");
        std::filesystem::remove(p);
    }
    SUBCASE("rows round-trip exactly") {
        SweepResult r;
        r.rows.push_back({-10.0, "S2", "nmse_mc", 1.2345678901234567e-17, 3.14e-3, 499, 1});
        r.rows.push_back({20.0, "single", "snr", -0.25, 0.0, 500, 0});
        const auto p = tmp_file("diris_roundtrip.csv");
        emit_csv(r, p);
        const SweepResult back = parse_csv(p);
        REQUIRE(back.rows.size() == 2);
        CHECK(back.rows[0].sweep_value == -10.0);
        CHECK(back.rows[0].mean == 1.2345678901234567e-17);
        CHECK(back.rows[0].stderr_ == 3.14e-3);
        CHECK(back.rows[0].n_valid == 499);
        CHECK(back.rows[0].n_degenerate == 1);
        CHECK(back.rows[1].scheme == "single");
        CHECK(back.rows[1].mean == -0.25);
        std::filesystem::remove(p);
    }
    SUBCASE("rows come out sorted by (value, scheme, metric)") {
        SweepResult r;
        r.rows.push_back({20.0, "S1", "snr", 1.0, 0.0, 1, 0});
        r.rows.push_back({-10.0, "S2", "snr", 2.0, 0.0, 1, 0});
        r.rows.push_back({-10.0, "S1", "snr", 3.0, 0.0, 1, 0});
        const auto p = tmp_file("diris_sorted.csv");
        emit_csv(r, p);
        const SweepResult back = parse_csv(p);
        CHECK(back.rows[0].sweep_value == -10.0);
        CHECK(back.rows[0].scheme == "S1");
        CHECK(back.rows[1].scheme == "S2");
        CHECK(back.rows[2].sweep_value == 20.0);
        std::filesystem::remove(p);
    }
}

TEST_CASE("scheme-1 theory overlay tracks the Monte Carlo NMSE") {
    ExperimentConfig ec = fig2a_config();
    ec.n_trials = 200;
    ec.sweep_values = {-10.0, 10.0, 30.0};
    ec.schemes = {Scheme::S1};
    const SweepResult r = run_sweep(ec, 2);
    for (double v : ec.sweep_values) {
        const double mc = find_row(r, v, "S1", "nmse_mc").mean;
        const double th = find_row(r, v, "S1", "nmse_theory").mean;
        CHECK(rel_err(mc, th) < 0.05);
    }
}

TEST_CASE("rate sweeps emit one rate metric per coherence time") {
    ExperimentConfig ec = fig3a_config();
    ec.n_trials = 2;
    ec.sweep_values = {2.0, 3.0};
    const SweepResult r = run_sweep(ec, 2);
    CHECK_NOTHROW(find_row(r, 2.0, "S1", "rate_t150"));
    CHECK_NOTHROW(find_row(r, 2.0, "S1", "rate_t400"));
    CHECK_NOTHROW(find_row(r, 3.0, "perfect", "snr"));
    // Perfect CSI pays no training, so its rate is invariant in T.
    const double p150 = find_row(r, 2.0, "perfect", "rate_t150").mean;
    const double p400 = find_row(r, 2.0, "perfect", "rate_t400").mean;
    CHECK(p150 == p400);
}

TEST_CASE("run_sweep input validation") {
    ExperimentConfig ec = fig2a_config();
    ec.sweep_values.clear();
    CHECK_THROWS_AS(run_sweep(ec, 1), std::invalid_argument);

    ec = fig2a_config();
    ec.n_trials = 0;
    CHECK_THROWS_AS(run_sweep(ec, 1), std::invalid_argument);

    ec = fig2a_config();
    ec.schemes.clear();
    CHECK_THROWS_AS(run_sweep(ec, 1), std::invalid_argument);

    ec = fig3a_config();
    ec.sweep_values = {2.5};  // M must be integral
    CHECK_THROWS_AS(run_sweep(ec, 1), std::invalid_argument);
}

TEST_CASE("scenario JSON round-trip with the exact field set") {
    const ScenarioConfig cfg = default_scenario();
    const std::string text = scenario_to_json(cfg);
    const ScenarioConfig back = scenario_from_json(text);
    CHECK(back.user_pos == cfg.user_pos);
    CHECK(back.irs1_azimuth == cfg.irs1_azimuth);
    CHECK(back.M1 == cfg.M1);
    CHECK(back.N0 == cfg.N0);
    CHECK(back.K_I == cfg.K_I);
    CHECK(back.beta0 == cfg.beta0);
    CHECK(back.alpha_single == cfg.alpha_single);
    CHECK(back.P == cfg.P);
    CHECK(back.sigma0_sq == cfg.sigma0_sq);
    CHECK(back.Gamma == cfg.Gamma);
    CHECK(back.T == cfg.T);

    CHECK_THROWS_AS(scenario_from_json("{\"bogus\": 1}"), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json("not json"), std::invalid_argument);

    // Unknown fields are rejected rather than silently dropped.
    std::string extra = text;
    extra.insert(extra.find_last_of('}'), ",\"extra_field\": 1\n");
    CHECK_THROWS_AS(scenario_from_json(extra), std::invalid_argument);
}

TEST_CASE("default scenario carries the documented link budget") {
    const ScenarioConfig cfg = default_scenario();
    CHECK(rel_err(cfg.beta0, std::pow(10.0, -3.5)) < 1e-12);
    CHECK(rel_err(cfg.K_U, 100.0) < 1e-12);
    CHECK(rel_err(cfg.Gamma, std::pow(10.0, 0.9)) < 1e-12);
    CHECK(rel_err(cfg.sigma0_sq, std::pow(10.0, -10.9)) < 1e-12);
    CHECK(rel_err(cfg.P, 0.1) < 1e-12);
    CHECK(cfg.T == 150);
    CHECK(cfg.M1 == 6);
    CHECK(cfg.N0 == 10);
    CHECK(rel_err(cfg.sigma_sq(), std::pow(10.0, -9.9)) < 1e-12);
}

TEST_CASE("experiment JSON round-trip") {
    ExperimentConfig ec = fig3a_config();
    ec.n_trials = 42;
    ec.master_seed = 987654321;
    const std::string text = experiment_to_json(ec);
    const ExperimentConfig back = experiment_from_json(text);
    CHECK(back.sweep == SweepKind::RateVsM);
    CHECK(back.sweep_values == ec.sweep_values);
    CHECK(back.n_trials == 42);
    CHECK(back.master_seed == 987654321);
    CHECK(back.schemes == ec.schemes);
    CHECK(back.coherence_times == ec.coherence_times);
    CHECK(back.scenario.M1 == ec.scenario.M1);
}
