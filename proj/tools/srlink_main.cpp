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

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "srlink/experiment.hpp"
#include "srlink/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"srlink - short-range mmWave link configuration simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string kind_str = "rate-cdf";
    std::string out_dir;
    int trials = -1;
    int threads = 1;
    uint64_t seed = 0;
    bool seed_set = false;

    CLI::App* run = app.add_subcommand("run", "run a seeded Monte Carlo experiment");
    run->add_option("--config", config_path, "scenario config file (JSON; empty file = defaults)")
        ->required();
    run->add_option("--kind", kind_str,
                    "experiment kind: rate-cdf | rate-vs-snr | rate-vs-m | energy-metric | aoa-demo");
    run->add_option("--out", out_dir, "output directory (default: config output_dir)");
    run->add_option("--trials", trials, "override the configured trial count");
    run->add_option("--threads", threads, "worker threads over independent trials")
        ->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "override the configured master seed")
        ->each([&](const std::string&) { seed_set = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        srlink::ScenarioConfig cfg = srlink::parse_config(config_path);
        if (trials >= 0) cfg.trials = trials;
        if (seed_set) cfg.master_seed = seed;
        if (out_dir.empty()) out_dir = cfg.output_dir;
        const srlink::ExperimentKind kind = srlink::kind_from_name(kind_str);

        const srlink::ExperimentSummary s = srlink::run_experiment(cfg, kind, out_dir, threads);
        std::printf("%s: %d point(s), %d trial(s), %d failure(s) -> %s\n", kind_str.c_str(),
                    s.points, s.trials_run, s.failures, out_dir.c_str());
        return s.failures == 0 ? 0 : 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
