#include "diris/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace diris {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("ScenarioConfig: ") + what);
}

}  // namespace

void ScenarioConfig::validate() const {
    require(M1 >= 1 && M2 >= 1 && N0 >= 1, "M1, M2, N0 must be >= 1");
    require(K_U >= 0.0 && K_I >= 0.0 && K_A >= 0.0, "Rician factors must be >= 0");
    require(beta0 > 0.0 && beta0 <= 1.0, "beta0 must be in (0, 1]");
    require(d0 > 0.0, "d0 must be > 0");
    require(alpha_U >= 2.0 && alpha_I >= 2.0 && alpha_A >= 2.0 && alpha_single >= 2.0,
            "path-loss exponents must be >= 2");
    require(P > 0.0, "P must be > 0");
    require(sigma0_sq >= 0.0, "sigma0_sq must be >= 0");
    require(Gamma >= 1.0, "Gamma must be >= 1");
    require(T >= 1, "T must be >= 1");
    require(std::isfinite(irs1_azimuth) && std::isfinite(irs2_azimuth), "azimuths must be finite");
}

ScenarioConfig default_scenario() {
    ScenarioConfig cfg;
    cfg.user_pos = {1.0, 20.0, 0.0};
    cfg.ap_pos = {1.0, 0.0, 0.0};
    cfg.irs1_pos = {0.0, 20.0, 0.0};
    cfg.irs2_pos = {0.0, 0.0, 0.0};
    cfg.irs1_azimuth = 130.0 * M_PI / 180.0;
    cfg.irs2_azimuth = 30.0 * M_PI / 180.0;
    cfg.M1 = 6;
    cfg.M2 = 6;
    cfg.N0 = 10;
    cfg.K_U = db_to_linear(20.0);
    cfg.K_I = db_to_linear(20.0);
    cfg.K_A = db_to_linear(20.0);
    cfg.beta0 = db_to_linear(-35.0);
    cfg.d0 = 1.0;
    cfg.alpha_U = 2.2;
    cfg.alpha_I = 2.4;
    cfg.alpha_A = 2.2;
    cfg.alpha_single = 4.0;
    cfg.P = dbm_to_watts(20.0);
    cfg.sigma0_sq = dbm_to_watts(-79.0);
    cfg.Gamma = db_to_linear(9.0);
    cfg.T = 150;
    return cfg;
}

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kFields[] = {
    "user_pos",   "ap_pos",       "irs1_pos", "irs2_pos", "irs1_azimuth", "irs2_azimuth",
    "M1",         "M2",           "N0",       "K_U",      "K_I",          "K_A",
    "beta0",      "d0",           "alpha_U",  "alpha_I",  "alpha_A",      "alpha_single",
    "P",          "sigma0_sq",    "Gamma",    "T"};

std::array<double, 3> to_pos(const ojson& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 3)
        throw std::invalid_argument(std::string("ScenarioConfig: ") + key + " must be [x,y,z]");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

}  // namespace

std::string scenario_to_json(const ScenarioConfig& cfg) {
    ojson j;
    j["user_pos"] = cfg.user_pos;
    j["ap_pos"] = cfg.ap_pos;
    j["irs1_pos"] = cfg.irs1_pos;
    j["irs2_pos"] = cfg.irs2_pos;
    j["irs1_azimuth"] = cfg.irs1_azimuth;
    j["irs2_azimuth"] = cfg.irs2_azimuth;
    j["M1"] = cfg.M1;
    j["M2"] = cfg.M2;
    j["N0"] = cfg.N0;
    j["K_U"] = cfg.K_U;
    j["K_I"] = cfg.K_I;
    j["K_A"] = cfg.K_A;
    j["beta0"] = cfg.beta0;
    j["d0"] = cfg.d0;
    j["alpha_U"] = cfg.alpha_U;
    j["alpha_I"] = cfg.alpha_I;
    j["alpha_A"] = cfg.alpha_A;
    j["alpha_single"] = cfg.alpha_single;
    j["P"] = cfg.P;
    j["sigma0_sq"] = cfg.sigma0_sq;
    j["Gamma"] = cfg.Gamma;
    j["T"] = cfg.T;
    return j.dump(2) + "\n";
}

ScenarioConfig scenario_from_json(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("ScenarioConfig: bad JSON: ") + e.what());
    }
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* f : kFields) known = known || item.key() == f;
        if (!known)
            throw std::invalid_argument("ScenarioConfig: unknown field '" + item.key() + "'");
    }
    ScenarioConfig cfg;
    cfg.user_pos = to_pos(j, "user_pos");
    cfg.ap_pos = to_pos(j, "ap_pos");
    cfg.irs1_pos = to_pos(j, "irs1_pos");
    cfg.irs2_pos = to_pos(j, "irs2_pos");
    cfg.irs1_azimuth = j.at("irs1_azimuth").get<double>();
    cfg.irs2_azimuth = j.at("irs2_azimuth").get<double>();
    cfg.M1 = j.at("M1").get<int>();
    cfg.M2 = j.at("M2").get<int>();
    cfg.N0 = j.at("N0").get<int>();
    cfg.K_U = j.at("K_U").get<double>();
    cfg.K_I = j.at("K_I").get<double>();
    cfg.K_A = j.at("K_A").get<double>();
    cfg.beta0 = j.at("beta0").get<double>();
    cfg.d0 = j.at("d0").get<double>();
    cfg.alpha_U = j.at("alpha_U").get<double>();
    cfg.alpha_I = j.at("alpha_I").get<double>();
    cfg.alpha_A = j.at("alpha_A").get<double>();
    cfg.alpha_single = j.at("alpha_single").get<double>();
    cfg.P = j.at("P").get<double>();
    cfg.sigma0_sq = j.at("sigma0_sq").get<double>();
    cfg.Gamma = j.at("Gamma").get<double>();
    cfg.T = j.at("T").get<int>();
    cfg.validate();
    return cfg;
}

}  // namespace diris
