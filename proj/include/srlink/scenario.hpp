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

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace srlink {

enum class Method { PerfectCsi, Amp, DcsAmp, Ml, Gmp };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

struct RoomConfig {
    double x_m = 5.0;
    double y_m = 5.0;
    double height_m = 3.0;
    double ap_height_m = 1.5;
    double wall_reflection = -0.6;
    double ceiling_reflection = -0.6;
    double floor_reflection = -0.6;
    bool floor_enabled = false;
};

/// All physical and algorithmic parameters of one experiment. Defaults are
/// the desk-scale 60 GHz setup: four 16-element subarrays across 20 cm,
/// stations with 16-element arrays at 80 cm, 2-bit phase shifters, root-9
/// length-16 ZC training.
struct ScenarioConfig {
    int n = 16;
    int n_rf = 4;
    double wavelength_m = 0.005;
    double l_ap_m = 0.20;
    double l_sta_m = 0.04;
    double d_m = 0.8;
    int q_bits = 2;
    int zc_root = 9;
    std::vector<int> m_pilots{16};
    std::vector<double> snr_db{10.0};
    /// SNR governing the pilot noise; NaN means "same as snr_db", +inf means
    /// noiseless pilots.
    double pilot_snr_db = std::numeric_limits<double>::quiet_NaN();
    int trials = 500;
    double d_min_m = 0.3;
    double d_max_m = 1.3;
    double grid_deg = 1.0;
    double delta_e = 0.9;
    int dcs_passes = 12;
    RoomConfig room;
    std::vector<Method> methods{Method::PerfectCsi, Method::Amp, Method::DcsAmp, Method::Ml,
                                Method::Gmp};
    uint64_t master_seed = 1;
    std::string output_dir = "out";
};

/// Parses a JSON key-value config. An empty file yields the all-defaults
/// scenario; unknown keys and invariant violations are rejected by name.
ScenarioConfig parse_config(const std::string& path);

ScenarioConfig config_from_json_text(const std::string& text);

/// The fully-resolved configuration as canonical JSON text (what gets echoed
/// into the output directory).
std::string resolved_config_json(const ScenarioConfig& cfg);

void validate_config(const ScenarioConfig& cfg);

}  // namespace srlink
