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

#include <string>

#include "srlink/link_eval.hpp"
#include "srlink/scenario.hpp"

namespace srlink {

enum class ExperimentKind { RateCdf, RateVsSnr, RateVsM, EnergyMetric, AoaDemo };

const char* kind_name(ExperimentKind k);
ExperimentKind kind_from_name(const std::string& name);

struct ExperimentSummary {
    int points = 0;
    int trials_run = 0;
    int failures = 0;
};

/// Runs the requested campaign and writes the result files into out_dir:
/// resolved_config.json, per-point raw CSVs
/// (trial, method, user, sinr_db, rate_bps_hz, seed), aggregate.csv
/// (method, x-value, mean, p10/p50/p90 of the concatenated per-user rates)
/// and manifest.txt. Outputs are byte-identical for a fixed master seed,
/// independent of the thread count. The per-trial seed column allows any
/// single trial to be replayed through run_trial.
ExperimentSummary run_experiment(const ScenarioConfig& cfg, ExperimentKind kind,
                                 const std::string& out_dir, int threads = 1);

/// Per-trial seed for the counter-based split (shared across sweep points so
/// crossover comparisons are paired).
uint64_t trial_seed(uint64_t master_seed, int trial);

}  // namespace srlink
