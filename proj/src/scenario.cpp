// srlink - short-range mmWave link configuration simulator
// Copyright (C) 2026 srlink contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "srlink/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace srlink {

using nlohmann::json;

const char* method_name(Method m) {
    switch (m) {
        case Method::PerfectCsi: return "perfect-csi";
        case Method::Amp: return "amp";
        case Method::DcsAmp: return "dcs-amp";
        case Method::Ml: return "ml";
        case Method::Gmp: return "gmp";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "perfect-csi") return Method::PerfectCsi;
    if (name == "amp") return Method::Amp;
    if (name == "dcs-amp") return Method::DcsAmp;
    if (name == "ml") return Method::Ml;
    if (name == "gmp") return Method::Gmp;
    throw std::invalid_argument("unknown method '" + name + "'");
}

namespace {

void reject_unknown_keys(const json& j, const std::vector<std::string>& known,
                         const std::string& scope) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : known)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw std::invalid_argument("unknown config key '" + scope + it.key() + "'");
    }
}

std::vector<double> as_double_list(const json& v, const char* key) {
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
    } else if (v.is_array()) {
        for (const auto& e : v) {
            if (!e.is_number()) throw std::invalid_argument(std::string("config key '") + key + "' must be numeric");
            out.push_back(e.get<double>());
        }
    } else {
        throw std::invalid_argument(std::string("config key '") + key + "' must be a number or list");
    }
    if (out.empty()) throw std::invalid_argument(std::string("config key '") + key + "' must not be empty");
    return out;
}

std::vector<int> as_int_list(const json& v, const char* key) {
    std::vector<int> out;
    for (double d : as_double_list(v, key)) {
        if (d != std::floor(d)) throw std::invalid_argument(std::string("config key '") + key + "' must be integer");
        out.push_back(static_cast<int>(d));
    }
    return out;
}

}  // namespace

ScenarioConfig config_from_json_text(const std::string& text) {
    ScenarioConfig cfg;

    std::string trimmed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
    if (trimmed.empty()) {
        validate_config(cfg);
        return cfg;
    }

    json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    reject_unknown_keys(j, {"n", "n_rf", "wavelength_m", "l_ap_m", "l_sta_m", "d_m", "q_bits",
                            "zc_root", "m_pilots", "snr_db", "pilot_snr_db", "trials", "d_min_m",
                            "d_max_m", "grid_deg", "delta_e", "dcs_passes", "room", "methods",
                            "master_seed", "output_dir"},
                        "");

    if (j.contains("n")) cfg.n = j["n"].get<int>();
    if (j.contains("n_rf")) cfg.n_rf = j["n_rf"].get<int>();
    if (j.contains("wavelength_m")) cfg.wavelength_m = j["wavelength_m"].get<double>();
    if (j.contains("l_ap_m")) cfg.l_ap_m = j["l_ap_m"].get<double>();
    if (j.contains("l_sta_m")) cfg.l_sta_m = j["l_sta_m"].get<double>();
    if (j.contains("d_m")) cfg.d_m = j["d_m"].get<double>();
    if (j.contains("q_bits")) cfg.q_bits = j["q_bits"].get<int>();
    if (j.contains("zc_root")) cfg.zc_root = j["zc_root"].get<int>();
    if (j.contains("m_pilots")) cfg.m_pilots = as_int_list(j["m_pilots"], "m_pilots");
    if (j.contains("snr_db")) cfg.snr_db = as_double_list(j["snr_db"], "snr_db");
    if (j.contains("pilot_snr_db")) {
        const json& v = j["pilot_snr_db"];
        if (v.is_null()) {
            // null = track snr_db (the default)
        } else if (v.is_string() && v.get<std::string>() == "inf") {
            cfg.pilot_snr_db = std::numeric_limits<double>::infinity();
        } else if (v.is_number()) {
            cfg.pilot_snr_db = v.get<double>();
        } else {
            throw std::invalid_argument("config key 'pilot_snr_db' must be a number or \"inf\"");
        }
    }
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("d_min_m")) cfg.d_min_m = j["d_min_m"].get<double>();
    if (j.contains("d_max_m")) cfg.d_max_m = j["d_max_m"].get<double>();
    if (j.contains("grid_deg")) cfg.grid_deg = j["grid_deg"].get<double>();
    if (j.contains("delta_e")) cfg.delta_e = j["delta_e"].get<double>();
    if (j.contains("dcs_passes")) cfg.dcs_passes = j["dcs_passes"].get<int>();
    if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<uint64_t>();
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();

    if (j.contains("room")) {
        const json& r = j["room"];
        if (!r.is_object()) throw std::invalid_argument("config key 'room' must be an object");
        reject_unknown_keys(r, {"x_m", "y_m", "height_m", "ap_height_m", "wall_reflection",
                                "ceiling_reflection", "floor_reflection", "floor_enabled"},
                            "room.");
        if (r.contains("x_m")) cfg.room.x_m = r["x_m"].get<double>();
        if (r.contains("y_m")) cfg.room.y_m = r["y_m"].get<double>();
        if (r.contains("height_m")) cfg.room.height_m = r["height_m"].get<double>();
        if (r.contains("ap_height_m")) cfg.room.ap_height_m = r["ap_height_m"].get<double>();
        if (r.contains("wall_reflection")) cfg.room.wall_reflection = r["wall_reflection"].get<double>();
        if (r.contains("ceiling_reflection"))
            cfg.room.ceiling_reflection = r["ceiling_reflection"].get<double>();
        if (r.contains("floor_reflection"))
            cfg.room.floor_reflection = r["floor_reflection"].get<double>();
        if (r.contains("floor_enabled")) cfg.room.floor_enabled = r["floor_enabled"].get<bool>();
    }

    if (j.contains("methods")) {
        if (!j["methods"].is_array()) throw std::invalid_argument("config key 'methods' must be a list");
        cfg.methods.clear();
        for (const auto& m : j["methods"]) cfg.methods.push_back(method_from_name(m.get<std::string>()));
    }

    validate_config(cfg);
    return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

void validate_config(const ScenarioConfig& cfg) {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    if (cfg.n < 2) fail("field 'n' must be at least 2");
    if (cfg.n_rf < 1) fail("field 'n_rf' must be at least 1");
    if (cfg.wavelength_m <= 0) fail("field 'wavelength_m' must be positive");
    if (cfg.l_ap_m <= 0) fail("field 'l_ap_m' must be positive");
    if (cfg.l_sta_m <= 0) fail("field 'l_sta_m' must be positive");
    if (cfg.d_m <= 0) fail("field 'd_m' must be positive");
    if (cfg.q_bits < 1) fail("field 'q_bits' must be at least 1");
    if (cfg.trials < 0) fail("field 'trials' must be nonnegative");
    if (cfg.m_pilots.empty()) fail("field 'm_pilots' must not be empty");
    for (int m : cfg.m_pilots)
        if (m < 1 || m > cfg.n * cfg.n) fail("field 'm_pilots' entries must be in [1, n^2]");
    if (cfg.snr_db.empty()) fail("field 'snr_db' must not be empty");
    if (cfg.d_min_m <= 0 || cfg.d_max_m < cfg.d_min_m) fail("fields 'd_min_m'/'d_max_m' invalid");
    if (cfg.grid_deg <= 0 || cfg.grid_deg > 90) fail("field 'grid_deg' must be in (0, 90]");
    if (cfg.delta_e <= 0 || cfg.delta_e > 1) fail("field 'delta_e' must be in (0, 1]");
    if (cfg.dcs_passes < 1) fail("field 'dcs_passes' must be positive");
    if (cfg.methods.empty()) fail("field 'methods' must not be empty");
    if (cfg.room.x_m <= 0 || cfg.room.y_m <= 0 || cfg.room.height_m <= 0)
        fail("room dimensions must be positive");
    if (cfg.room.ap_height_m <= 0 || cfg.room.ap_height_m >= cfg.room.height_m)
        fail("field 'room.ap_height_m' must lie inside the room");
    if (std::abs(cfg.room.wall_reflection) > 1 || std::abs(cfg.room.ceiling_reflection) > 1 ||
        std::abs(cfg.room.floor_reflection) > 1)
        fail("reflection coefficients must have magnitude at most 1");
}

std::string resolved_config_json(const ScenarioConfig& cfg) {
    json j;
    j["n"] = cfg.n;
    j["n_rf"] = cfg.n_rf;
    j["wavelength_m"] = cfg.wavelength_m;
    j["l_ap_m"] = cfg.l_ap_m;
    j["l_sta_m"] = cfg.l_sta_m;
    j["d_m"] = cfg.d_m;
    j["q_bits"] = cfg.q_bits;
    j["zc_root"] = cfg.zc_root;
    j["m_pilots"] = cfg.m_pilots;
    j["snr_db"] = cfg.snr_db;
    if (std::isnan(cfg.pilot_snr_db))
        j["pilot_snr_db"] = nullptr;
    else if (std::isinf(cfg.pilot_snr_db))
        j["pilot_snr_db"] = "inf";
    else
        j["pilot_snr_db"] = cfg.pilot_snr_db;
    j["trials"] = cfg.trials;
    j["d_min_m"] = cfg.d_min_m;
    j["d_max_m"] = cfg.d_max_m;
    j["grid_deg"] = cfg.grid_deg;
    j["delta_e"] = cfg.delta_e;
    j["dcs_passes"] = cfg.dcs_passes;
    j["room"] = {{"x_m", cfg.room.x_m},
                 {"y_m", cfg.room.y_m},
                 {"height_m", cfg.room.height_m},
                 {"ap_height_m", cfg.room.ap_height_m},
                 {"wall_reflection", cfg.room.wall_reflection},
                 {"ceiling_reflection", cfg.room.ceiling_reflection},
                 {"floor_reflection", cfg.room.floor_reflection},
                 {"floor_enabled", cfg.room.floor_enabled}};
    std::vector<std::string> methods;
    for (Method m : cfg.methods) methods.emplace_back(method_name(m));
    j["methods"] = methods;
    j["master_seed"] = cfg.master_seed;
    j["output_dir"] = cfg.output_dir;
    return j.dump(2) + "\n";
}

}  // namespace srlink
