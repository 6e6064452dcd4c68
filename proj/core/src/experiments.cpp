#include "diris/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"

namespace diris {

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::S1: return "S1";
        case Scheme::S2: return "S2";
        case Scheme::Single: return "single";
        case Scheme::Perfect: return "perfect";
    }
    throw std::invalid_argument("scheme_name: bad scheme");
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "S1") return Scheme::S1;
    if (name == "S2") return Scheme::S2;
    if (name == "single") return Scheme::Single;
    if (name == "perfect") return Scheme::Perfect;
    throw std::invalid_argument("scheme_from_name: unknown scheme '" + name + "'");
}

std::string sweep_name(SweepKind k) {
    switch (k) {
        case SweepKind::RicianNmse: return "rician_nmse";
        case SweepKind::RicianSnr: return "rician_snr";
        case SweepKind::RateVsM: return "rate_vs_m";
        case SweepKind::RateVsPower: return "rate_vs_power";
        case SweepKind::Custom: return "custom";
    }
    throw std::invalid_argument("sweep_name: bad sweep kind");
}

SweepKind sweep_from_name(const std::string& name) {
    if (name == "rician_nmse") return SweepKind::RicianNmse;
    if (name == "rician_snr") return SweepKind::RicianSnr;
    if (name == "rate_vs_m") return SweepKind::RateVsM;
    if (name == "rate_vs_power") return SweepKind::RateVsPower;
    if (name == "custom") return SweepKind::Custom;
    throw std::invalid_argument("sweep_from_name: unknown sweep '" + name + "'");
}

TrialMetrics run_trial(std::uint64_t seed, const ScenarioConfig& cfg, Scheme scheme) {
    Rng rng(seed);
    TrialMetrics m;
    const double sigma_sq = cfg.sigma_sq();

    if (scheme == Scheme::Single) {
        const SingleIrsRealization s = realize_single_irs(cfg, rng);
        const VecC h_hat = estimate_single_irs(s.h, sigma_sq, rng);
        const SingleIrsBeam beam = beamform_single_irs(h_hat);
        m.t_train = cfg.M1 + cfg.M2;
        m.chan_sq = s.h.squaredNorm();
        if (beam.degenerate) {
            m.degenerate = true;
            return m;
        }
        m.err_sq = (h_hat - s.h).squaredNorm();
        m.gain = single_irs_gain(s.h, beam);
        return m;
    }

    const ElementwiseChannels ch = realize_channels(cfg, rng);
    const MatC H = group_channel(cascade_elementwise(ch), cfg.N0);
    m.chan_sq = H.squaredNorm();

    switch (scheme) {
        case Scheme::S1: {
            const TrainingSchedule sched = schedule_scheme1(cfg.M1, cfg.M2);
            const PilotObservation obs = observe(H, sched, sigma_sq, rng);
            const EstimateS1 est =
                estimate_scheme1(obs.matrix(), sched.theta1, sched.theta2, sigma_sq);
            const BeamformingPair pair = ao_optimize(est.H_hat);
            m.t_train = cfg.M1 * cfg.M2;
            m.err_sq = (est.H_hat - H).squaredNorm();
            m.gain = std::norm(effective_gain(H, pair.phi1, pair.phi2));
            return m;
        }
        case Scheme::S2: {
            const TrainingSchedule sched = schedule_scheme2(cfg.M1, cfg.M2);
            const PilotObservation obs = observe(H, sched, sigma_sq, rng);
            const VecC y1 = obs.y.head(cfg.M2);
            const VecC y2 = obs.y.tail(cfg.M1);
            const EstimateS2 est = estimate_scheme2(y1, y2, sched.theta1, sched.theta2);
            m.t_train = cfg.M1 + cfg.M2;
            if (est.degenerate) {
                m.degenerate = true;
                return m;
            }
            const BeamformingPair pair = beamform_s2(est);
            m.err_sq = (est.HL_hat - H).squaredNorm();
            m.mse_approx = mse_scheme2_approx(est, sched.theta1, sched.theta2, sigma_sq);
            m.gain = std::norm(effective_gain(H, pair.phi1, pair.phi2));
            return m;
        }
        case Scheme::Perfect: {
            const BeamformingPair pair = perfect_csi_bound(H);
            m.t_train = 0;
            m.gain = std::norm(effective_gain(H, pair.phi1, pair.phi2));
            return m;
        }
        default:
            throw std::invalid_argument("run_trial: bad scheme");
    }
}

namespace {

void parallel_for(long n, int threads, const std::function<void(long)>& body) {
    if (threads <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    const int n_workers = std::min<long>(threads, n);
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct CellStats {
    double mean = 0.0;
    double stderr_ = 0.0;
};

// Fixed-order mean and standard error; n == 1 reports stderr 0.
CellStats mean_stderr(const std::vector<double>& xs) {
    CellStats s;
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.stderr_ = std::sqrt(ss / (static_cast<double>(xs.size()) - 1.0)) /
                    std::sqrt(static_cast<double>(xs.size()));
    }
    return s;
}

ScenarioConfig cell_scenario(const ExperimentConfig& ec, double value) {
    ScenarioConfig cfg = ec.scenario;
    switch (ec.sweep) {
        case SweepKind::RicianNmse:
        case SweepKind::RicianSnr:
            cfg.K_I = db_to_linear(value);  // sweep axis in dB
            break;
        case SweepKind::RateVsM: {
            const int m = static_cast<int>(std::lround(value));
            if (m < 1 || std::abs(value - m) > 1e-9)
                throw std::invalid_argument("run_sweep: rate_vs_m values must be positive integers");
            cfg.M1 = m;
            cfg.M2 = m;
            break;
        }
        case SweepKind::RateVsPower:
            cfg.P = dbm_to_watts(value);  // sweep axis in dBm
            break;
        case SweepKind::Custom:
            break;
    }
    return cfg;
}

bool has_estimate(Scheme s) { return s != Scheme::Perfect; }

}  // namespace

SweepResult run_sweep(const ExperimentConfig& ec, int n_threads) {
    if (ec.n_trials < 1) throw std::invalid_argument("run_sweep: n_trials must be >= 1");
    if (ec.sweep_values.empty()) throw std::invalid_argument("run_sweep: empty sweep_values");
    if (ec.schemes.empty()) throw std::invalid_argument("run_sweep: no schemes");
    ec.scenario.validate();

    std::vector<int> rate_ts = ec.coherence_times;
    if (rate_ts.empty()) rate_ts.push_back(ec.scenario.T);

    const long n_values = static_cast<long>(ec.sweep_values.size());
    const long n_schemes = static_cast<long>(ec.schemes.size());
    const long n_trials = ec.n_trials;

    std::vector<ScenarioConfig> cells;
    cells.reserve(n_values);
    for (double v : ec.sweep_values) {
        cells.push_back(cell_scenario(ec, v));
        cells.back().validate();
    }

    // One slot per (value, scheme, trial); storage order fixes the reduction
    // order, so results do not depend on the thread count.
    std::vector<TrialMetrics> store(
        static_cast<std::size_t>(n_values * n_schemes * n_trials));
    parallel_for(n_values * n_schemes * n_trials, n_threads, [&](long k) {
        const long vi = k / (n_schemes * n_trials);
        const long si = (k / n_trials) % n_schemes;
        const long ti = k % n_trials;
        const Scheme sch = ec.schemes[static_cast<std::size_t>(si)];
        const std::uint64_t seed =
            trial_seed(ec.master_seed, static_cast<std::uint64_t>(vi),
                       static_cast<std::uint64_t>(ti), static_cast<std::uint64_t>(sch));
        store[static_cast<std::size_t>(k)] =
            run_trial(seed, cells[static_cast<std::size_t>(vi)], sch);
    });

    SweepResult result;
    for (long vi = 0; vi < n_values; ++vi) {
        const double value = ec.sweep_values[static_cast<std::size_t>(vi)];
        const ScenarioConfig& cfg = cells[static_cast<std::size_t>(vi)];
        const double sigma_sq = cfg.sigma_sq();
        for (long si = 0; si < n_schemes; ++si) {
            const Scheme sch = ec.schemes[static_cast<std::size_t>(si)];
            const TrialMetrics* cell =
                &store[static_cast<std::size_t>((vi * n_schemes + si) * n_trials)];

            long n_degenerate = 0;
            std::vector<double> err, chan, approx, snr;
            err.reserve(n_trials);
            chan.reserve(n_trials);
            snr.reserve(n_trials);
            for (long ti = 0; ti < n_trials; ++ti) {
                const TrialMetrics& t = cell[ti];
                if (t.degenerate) {
                    ++n_degenerate;
                    continue;
                }
                err.push_back(t.err_sq);
                chan.push_back(t.chan_sq);
                if (sch == Scheme::S2) approx.push_back(t.mse_approx);
                snr.push_back(t.gain / sigma_sq);
            }
            const long n_valid = n_trials - n_degenerate;

            auto push = [&](const std::string& metric, double mean, double se) {
                result.rows.push_back(
                    {value, scheme_name(sch), metric, mean, se, n_valid, n_degenerate});
            };

            if (n_valid == 0) {
                // Keep the cell visible with its degeneracy count.
                push(ec.sweep == SweepKind::RicianNmse ? "nmse_mc" : "snr", 0.0, 0.0);
                continue;
            }

            const CellStats chan_stats = mean_stderr(chan);
            switch (ec.sweep) {
                case SweepKind::RicianNmse: {
                    if (has_estimate(sch)) {
                        const CellStats e = mean_stderr(err);
                        push("nmse_mc", e.mean / chan_stats.mean, e.stderr_ / chan_stats.mean);
                        if (sch == Scheme::S1) {
                            // DFT training: theory MSE is sigma^2.
                            push("nmse_theory", sigma_sq / chan_stats.mean,
                                 sigma_sq * chan_stats.stderr_ /
                                     (chan_stats.mean * chan_stats.mean));
                        } else if (sch == Scheme::S2) {
                            const CellStats a = mean_stderr(approx);
                            push("nmse_theory", a.mean / chan_stats.mean,
                                 a.stderr_ / chan_stats.mean);
                        }
                    }
                    break;
                }
                case SweepKind::RicianSnr: {
                    const CellStats s = mean_stderr(snr);
                    push("snr", s.mean, s.stderr_);
                    break;
                }
                case SweepKind::RateVsM:
                case SweepKind::RateVsPower:
                case SweepKind::Custom: {
                    const CellStats s = mean_stderr(snr);
                    push("snr", s.mean, s.stderr_);
                    const int t_train = cell[0].t_train;  // per-scheme constant
                    for (int T : rate_ts) {
                        if (t_train > T)
                            throw std::invalid_argument(
                                "run_sweep: training time exceeds coherence time T=" +
                                std::to_string(T));
                        std::vector<double> rates;
                        rates.reserve(n_valid);
                        const double prelog =
                            static_cast<double>(T - t_train) / static_cast<double>(T);
                        for (long ti = 0; ti < n_trials; ++ti) {
                            const TrialMetrics& t = cell[ti];
                            if (t.degenerate) continue;
                            rates.push_back(
                                prelog * std::log2(1.0 + t.gain / (cfg.Gamma * sigma_sq)));
                        }
                        const CellStats r = mean_stderr(rates);
                        push("rate_t" + std::to_string(T), r.mean, r.stderr_);
                    }
                    break;
                }
            }
        }
    }
    return result;
}

namespace {

std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

}  // namespace

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::vector<SweepRow> rows = result.rows;
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.sweep_value, a.scheme, a.metric) <
               std::tie(b.sweep_value, b.scheme, b.metric);
    });
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path.string());
    out << "sweep_value,scheme,metric,mean,stderr,n_valid,n_degenerate\n";
    for (const SweepRow& r : rows) {
        out << fmt_value(r.sweep_value) << ',' << r.scheme << ',' << r.metric << ','
            << fmt_float(r.mean) << ',' << fmt_float(r.stderr_) << ',' << r.n_valid << ','
            << r.n_degenerate << '\n';
    }
    if (!out) throw std::runtime_error("emit_csv: write failed for " + path.string());
}

SweepResult parse_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) ||
        line != "sweep_value,scheme,metric,mean,stderr,n_valid,n_degenerate")
        throw std::runtime_error("parse_csv: bad header in " + path.string());
    SweepResult result;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        SweepRow row;
        std::getline(ss, field, ',');
        row.sweep_value = std::stod(field);
        std::getline(ss, row.scheme, ',');
        std::getline(ss, row.metric, ',');
        std::getline(ss, field, ',');
        row.mean = std::stod(field);
        std::getline(ss, field, ',');
        row.stderr_ = std::stod(field);
        std::getline(ss, field, ',');
        row.n_valid = std::stol(field);
        std::getline(ss, field, ',');
        row.n_degenerate = std::stol(field);
        result.rows.push_back(std::move(row));
    }
    return result;
}

namespace {

std::vector<double> ki_grid_db() { return {-10, -5, 0, 5, 10, 15, 20, 25, 30}; }

}  // namespace

ExperimentConfig fig2a_config() {
    ExperimentConfig ec;
    ec.scenario = default_scenario();
    ec.sweep = SweepKind::RicianNmse;
    ec.sweep_values = ki_grid_db();
    ec.schemes = {Scheme::S1, Scheme::S2};
    return ec;
}

ExperimentConfig fig2b_config() {
    ExperimentConfig ec;
    ec.scenario = default_scenario();
    ec.sweep = SweepKind::RicianSnr;
    ec.sweep_values = ki_grid_db();
    ec.schemes = {Scheme::S1, Scheme::S2, Scheme::Single, Scheme::Perfect};
    return ec;
}

ExperimentConfig fig3a_config() {
    ExperimentConfig ec;
    ec.scenario = default_scenario();
    ec.sweep = SweepKind::RateVsM;
    ec.sweep_values = {2, 3, 4, 5, 6, 7, 8, 9, 10};
    ec.schemes = {Scheme::S1, Scheme::S2, Scheme::Single, Scheme::Perfect};
    ec.coherence_times = {150, 400};
    return ec;
}

ExperimentConfig fig3b_config() {
    ExperimentConfig ec;
    ec.scenario = default_scenario();
    ec.sweep = SweepKind::RateVsPower;
    ec.sweep_values = {10, 15, 20, 25, 30, 35};
    ec.schemes = {Scheme::S1, Scheme::S2, Scheme::Single, Scheme::Perfect};
    return ec;
}

std::string experiment_to_json(const ExperimentConfig& ec) {
    nlohmann::ordered_json j;
    j["scenario"] = nlohmann::ordered_json::parse(scenario_to_json(ec.scenario));
    j["sweep"] = sweep_name(ec.sweep);
    j["sweep_values"] = ec.sweep_values;
    j["n_trials"] = ec.n_trials;
    j["master_seed"] = ec.master_seed;
    std::vector<std::string> names;
    names.reserve(ec.schemes.size());
    for (Scheme s : ec.schemes) names.push_back(scheme_name(s));
    j["schemes"] = names;
    if (!ec.coherence_times.empty()) j["coherence_times"] = ec.coherence_times;
    return j.dump(2) + "\n";
}

ExperimentConfig experiment_from_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("ExperimentConfig: bad JSON: ") + e.what());
    }
    ExperimentConfig ec;
    ec.scenario = scenario_from_json(j.at("scenario").dump());
    ec.sweep = sweep_from_name(j.at("sweep").get<std::string>());
    ec.sweep_values = j.at("sweep_values").get<std::vector<double>>();
    ec.n_trials = j.value("n_trials", 500);
    ec.master_seed = j.value("master_seed", std::uint64_t{1});
    for (const auto& name : j.at("schemes"))
        ec.schemes.push_back(scheme_from_name(name.get<std::string>()));
    if (j.contains("coherence_times"))
        ec.coherence_times = j.at("coherence_times").get<std::vector<int>>();
    return ec;
}

}  // namespace diris
