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

#include "srlink/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "srlink/acquisition.hpp"
#include "srlink/rng.hpp"

namespace srlink {

namespace fs = std::filesystem;

const char* kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::RateCdf: return "rate-cdf";
        case ExperimentKind::RateVsSnr: return "rate-vs-snr";
        case ExperimentKind::RateVsM: return "rate-vs-m";
        case ExperimentKind::EnergyMetric: return "energy-metric";
        case ExperimentKind::AoaDemo: return "aoa-demo";
    }
    return "?";
}

ExperimentKind kind_from_name(const std::string& name) {
    if (name == "rate-cdf") return ExperimentKind::RateCdf;
    if (name == "rate-vs-snr") return ExperimentKind::RateVsSnr;
    if (name == "rate-vs-m") return ExperimentKind::RateVsM;
    if (name == "energy-metric") return ExperimentKind::EnergyMetric;
    if (name == "aoa-demo") return ExperimentKind::AoaDemo;
    throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

uint64_t trial_seed(uint64_t master_seed, int trial) {
    return derive_seed(master_seed, 0x54524941ULL, static_cast<uint64_t>(trial));
}

namespace {

constexpr const char* kVersion = "srlink 0.1.0";

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

double percentile(std::vector<double> v, double p) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const double rank = p / 100.0 * (static_cast<double>(v.size()) - 1.0);
    const size_t lo = static_cast<size_t>(std::floor(rank));
    if (lo + 1 >= v.size()) return v.back();
    const double frac = rank - static_cast<double>(lo);
    return v[lo] + frac * (v[lo + 1] - v[lo]);
}

struct SweepPoint {
    double x = 0.0;
    double snr_db = 0.0;
    int m = 0;
    std::string raw_name;
};

struct PointResults {
    // results[trial][method index in cfg order]; empty vector = failed trial
    std::vector<std::vector<LinkReport>> reports;
    std::vector<uint64_t> failed_seeds;
};

PointResults run_point(const ScenarioConfig& cfg, const SweepPoint& pt, int threads) {
    const ScenarioRuntime rt = build_runtime(cfg, pt.snr_db, pt.m);
    PointResults out;
    out.reports.assign(cfg.trials, {});

    std::atomic<int> next{0};
    std::mutex fail_mutex;
    auto worker = [&]() {
        for (;;) {
            const int t = next.fetch_add(1);
            if (t >= cfg.trials) return;
            const uint64_t seed = trial_seed(cfg.master_seed, t);
            try {
                std::vector<LinkReport> reps;
                reps.reserve(cfg.methods.size());
                for (Method m : cfg.methods) reps.push_back(run_trial(rt, m, seed));
                out.reports[t] = std::move(reps);
            } catch (const std::exception&) {
                std::lock_guard<std::mutex> lock(fail_mutex);
                out.failed_seeds.push_back(seed);
            }
        }
    };

    const int n_threads = std::max(1, threads);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::sort(out.failed_seeds.begin(), out.failed_seeds.end());
    return out;
}

void write_raw_csv(const fs::path& path, const ScenarioConfig& cfg, const PointResults& res) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "'");
    out << "trial,method,user,sinr_db,rate_bps_hz,seed\n";
    for (int t = 0; t < cfg.trials; ++t) {
        if (res.reports[t].empty()) continue;
        for (size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            const LinkReport& rep = res.reports[t][mi];
            for (size_t u = 0; u < rep.rate.size(); ++u) {
                const double sinr_db = 10.0 * std::log10(rep.sinr[u]);
                out << t << ',' << method_name(rep.method) << ',' << u << ','
                    << fmt("%.10g", sinr_db) << ',' << fmt("%.10g", rep.rate[u]) << ',' << rep.seed
                    << "\n";
            }
        }
    }
}

struct Aggregate {
    std::string method;
    double x;
    double mean, p10, p50, p90;
};

std::vector<Aggregate> aggregate_point(const ScenarioConfig& cfg, const SweepPoint& pt,
                                       const PointResults& res) {
    std::vector<Aggregate> rows;
    for (size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        std::vector<double> rates;
        for (int t = 0; t < cfg.trials; ++t) {
            if (res.reports[t].empty()) continue;
            const LinkReport& rep = res.reports[t][mi];
            rates.insert(rates.end(), rep.rate.begin(), rep.rate.end());
        }
        Aggregate a;
        a.method = method_name(cfg.methods[mi]);
        a.x = pt.x;
        double sum = 0.0;
        for (double r : rates) sum += r;
        a.mean = rates.empty() ? 0.0 : sum / static_cast<double>(rates.size());
        a.p10 = percentile(rates, 10.0);
        a.p50 = percentile(rates, 50.0);
        a.p90 = percentile(rates, 90.0);
        rows.push_back(std::move(a));
    }
    return rows;
}

void write_manifest(const fs::path& dir, const ScenarioConfig& cfg, ExperimentKind kind,
                    const std::vector<SweepPoint>& points, int failures,
                    const std::vector<std::string>& extra) {
    std::ofstream out(dir / "manifest.txt");
    out << "tool: " << kVersion << "\n";
    out << "kind: " << kind_name(kind) << "\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(resolved_config_json(cfg))));
    out << "config_hash: " << buf << "\n";
    out << "master_seed: " << cfg.master_seed << "\n";
    out << "trials_per_point: " << cfg.trials << "\n";
    out << "points:";
    for (const auto& p : points) out << ' ' << fmt("%.6g", p.x);
    out << "\n";
    out << "methods:";
    for (Method m : cfg.methods) out << ' ' << method_name(m);
    out << "\n";
    out << "failed_trials: " << failures << "\n";
    for (const auto& line : extra) out << line << "\n";
}

ExperimentSummary run_rate_kind(const ScenarioConfig& cfg, ExperimentKind kind,
                                const fs::path& dir, int threads) {
    std::vector<SweepPoint> points;
    if (kind == ExperimentKind::RateCdf) {
        if (cfg.snr_db.size() != 1 || cfg.m_pilots.size() != 1)
            throw std::invalid_argument("rate-cdf expects scalar snr_db and m_pilots");
        points.push_back({cfg.snr_db[0], cfg.snr_db[0], cfg.m_pilots[0], "raw.csv"});
    } else if (kind == ExperimentKind::RateVsSnr) {
        if (cfg.m_pilots.size() != 1)
            throw std::invalid_argument("rate-vs-snr expects scalar m_pilots");
        for (double s : cfg.snr_db)
            points.push_back({s, s, cfg.m_pilots[0], "raw_snr_" + fmt("%.6g", s) + ".csv"});
    } else {
        if (cfg.snr_db.size() != 1)
            throw std::invalid_argument("rate-vs-m expects scalar snr_db");
        for (int m : cfg.m_pilots)
            points.push_back({static_cast<double>(m), cfg.snr_db[0], m,
                              "raw_m_" + std::to_string(m) + ".csv"});
    }

    ExperimentSummary summary;
    summary.points = static_cast<int>(points.size());
    std::vector<Aggregate> agg;
    for (const SweepPoint& pt : points) {
        const PointResults res = run_point(cfg, pt, threads);
        summary.trials_run += cfg.trials - static_cast<int>(res.failed_seeds.size());
        summary.failures += static_cast<int>(res.failed_seeds.size());
        write_raw_csv(dir / pt.raw_name, cfg, res);
        const auto rows = aggregate_point(cfg, pt, res);
        agg.insert(agg.end(), rows.begin(), rows.end());
    }

    std::ofstream out(dir / "aggregate.csv");
    out << "method,x_value,mean_rate_bps_hz,p10_rate,p50_rate,p90_rate\n";
    for (const Aggregate& a : agg)
        out << a.method << ',' << fmt("%.6g", a.x) << ',' << fmt("%.10g", a.mean) << ','
            << fmt("%.10g", a.p10) << ',' << fmt("%.10g", a.p50) << ',' << fmt("%.10g", a.p90)
            << "\n";
    out.close();

    write_manifest(dir, cfg, kind, points, summary.failures, {});
    return summary;
}

ExperimentSummary run_energy_metric(const ScenarioConfig& cfg, const fs::path& dir) {
    // fixed desk-scale sweep, LoS-only broadside geometry
    const int n_points = 30;
    const double d_lo = 0.2, d_hi = 3.0;
    const ApLayout ap = build_ap_layout(cfg.n, cfg.n_rf, cfg.wavelength_m, cfg.l_ap_m);
    const RoomSpec open_space = [] {
        RoomSpec r = RoomSpec::los_only();
        r.size_x = 100.0;  // large enough that any sweep distance stays inside
        r.size_y = 100.0;
        r.height = 100.0;
        r.ap_height = 50.0;
        return r;
    }();

    std::ofstream out(dir / "energy_metric.csv");
    out << "d_m,e_full,e_subarrays\n";
    for (int i = 0; i < n_points; ++i) {
        const double d = d_lo + (d_hi - d_lo) * i / (n_points - 1);
        const StaPlacement sta = place_sta(ap, d, 0.0, 0.0, cfg.n, cfg.l_sta_m);
        const ChannelSet ch = synthesize_channel(ap, sta, open_space);
        const EnergyMetrics em = energy_metrics(ch);
        out << fmt("%.10g", d) << ',' << fmt("%.10g", em.full) << ',' << fmt("%.10g", em.subarrays)
            << "\n";
    }
    out.close();

    ExperimentSummary summary;
    summary.points = n_points;
    write_manifest(dir, cfg, ExperimentKind::EnergyMetric, {}, 0, {});
    return summary;
}

ExperimentSummary run_aoa_demo(const ScenarioConfig& cfg, const fs::path& dir) {
    if (cfg.snr_db.size() != 1 || cfg.m_pilots.size() != 1)
        throw std::invalid_argument("aoa-demo expects scalar snr_db and m_pilots");
    const ScenarioRuntime rt = build_runtime(cfg, cfg.snr_db[0], cfg.m_pilots[0]);
    const int m_ap = std::max(2, rt.m_cs / 2);
    const uint64_t seed = trial_seed(cfg.master_seed, 0);

    // broadside station, fixed placement (gamma = 0, theta = 0)
    const StaPlacement sta = place_sta(rt.ap, cfg.d_m, 0.0, 0.0, cfg.n, cfg.l_sta_m);
    const ChannelSet ch = synthesize_channel(rt.ap, sta, rt.room);

    Rng probe_sched(derive_seed(seed, 4, 0));
    Rng probe_noise(derive_seed(seed, 5, 0));
    std::vector<CMat> psi(cfg.n_rf);
    for (int k = 0; k < cfg.n_rf; ++k)
        psi[k] = aoa_probe_schedule(m_ap, cfg.n, rt.z, probe_sched, cfg.q_bits);
    std::vector<CVec> f_slots(m_ap, rt.z_quantized);
    std::vector<std::vector<CVec>> w_slots(m_ap, std::vector<CVec>(cfg.n_rf));
    for (int m = 0; m < m_ap; ++m)
        for (int k = 0; k < cfg.n_rf; ++k) w_slots[m][k].assign(psi[k].row(m), psi[k].row(m) + cfg.n);

    const double sig = mean_signal_power(ch, f_slots, w_slots);
    const double snr_lin = std::pow(10.0, cfg.snr_db[0] / 10.0);
    const double sigma2 = sig / snr_lin;
    const MeasurementBatch batch = measure(ch, f_slots, w_slots, std::sqrt(sigma2), probe_noise);

    std::vector<AngularBelief> lik(cfg.n_rf);
    for (int k = 0; k < cfg.n_rf; ++k) {
        const GainCompensation gc = gain_compensate(batch.y[k], psi[k](0, 0));
        lik[k] = aoa_likelihood(gc.y_tilde, psi[k], gc.alpha_hat, sigma2, rt.grid, gc.degraded);
    }
    const ForwardBackwardResult fb = forward_backward(lik, rt.fwd_tables, rt.bwd_tables, rt.grid);

    std::ofstream out(dir / "beliefs.csv");
    out << "subarray,angle_deg,likelihood,fwd,bwd,combined\n";
    for (int k = 0; k < cfg.n_rf; ++k)
        for (int g = 0; g < rt.grid.size(); ++g)
            out << k << ',' << fmt("%.6g", rt.grid.angles[g] * 180.0 / M_PI) << ','
                << fmt("%.10g", lik[k].weights[g]) << ',' << fmt("%.10g", fb.fwd_in[k].weights[g])
                << ',' << fmt("%.10g", fb.bwd_in[k].weights[g]) << ','
                << fmt("%.10g", fb.combined[k].weights[g]) << "\n";
    out.close();

    // record the coordinate-level true local AoAs alongside, in the steering
    // model's sign convention (the beliefs' angle axis)
    std::vector<std::string> extra;
    for (int k = 0; k < cfg.n_rf; ++k) {
        const double lx = rt.ap.subarray_mid_offsets[k];
        const double omega = -std::atan2(0.0 - lx, cfg.d_m);
        extra.push_back("true_local_aoa_deg_" + std::to_string(k) + ": " +
                        fmt("%.6g", omega * 180.0 / M_PI));
    }
    write_manifest(dir, cfg, ExperimentKind::AoaDemo, {}, 0, extra);

    ExperimentSummary summary;
    summary.points = 1;
    summary.trials_run = 1;
    return summary;
}

}  // namespace

ExperimentSummary run_experiment(const ScenarioConfig& cfg, ExperimentKind kind,
                                 const std::string& out_dir, int threads) {
    validate_config(cfg);
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    {
        std::ofstream echo(dir / "resolved_config.json");
        echo << resolved_config_json(cfg);
    }
    switch (kind) {
        case ExperimentKind::RateCdf:
        case ExperimentKind::RateVsSnr:
        case ExperimentKind::RateVsM:
            return run_rate_kind(cfg, kind, dir, threads);
        case ExperimentKind::EnergyMetric:
            return run_energy_metric(cfg, dir);
        case ExperimentKind::AoaDemo:
            return run_aoa_demo(cfg, dir);
    }
    throw std::logic_error("run_experiment: unreachable");
}

}  // namespace srlink
