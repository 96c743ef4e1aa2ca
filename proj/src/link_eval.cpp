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

#include "srlink/link_eval.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "srlink/acquisition.hpp"
#include "srlink/dcs_amp.hpp"
#include "srlink/kernels.hpp"
#include "srlink/linalg.hpp"
#include "srlink/rng.hpp"

namespace srlink {

namespace {

// stream purposes for the counter-based seed split
constexpr uint64_t kPlacement = 1;
constexpr uint64_t kCsSchedule = 2;
constexpr uint64_t kCsNoise = 3;
constexpr uint64_t kProbeSchedule = 4;
constexpr uint64_t kProbeNoise = 5;
constexpr uint64_t kDlSchedule = 6;
constexpr uint64_t kDlNoise = 7;

CVec default_beam(int n, int q) {
    const PhaseAlphabet al = phase_alphabet(q, n);
    return CVec(n, al.entries[0]);
}

void fix_global_phase(CVec& v) {
    size_t best = 0;
    double best_mag = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const double m = std::abs(v[i]);
        if (m > best_mag) {
            best_mag = m;
            best = i;
        }
    }
    if (best_mag == 0.0) return;
    const cd rot = std::conj(v[best]) / best_mag;
    for (cd& e : v) e *= rot;
}

}  // namespace

BeamPair svd_beamformers(const CMat& h_hat, int q) {
    BeamPair bp;
    if (frobenius_norm(h_hat) == 0.0) {
        bp.f = default_beam(h_hat.cols, q);
        bp.w = default_beam(h_hat.rows, q);
        bp.degraded = true;
        return bp;
    }
    SingularTriplet t = top_singular_triplet(h_hat);
    fix_global_phase(t.u);
    fix_global_phase(t.v);
    bp.f = phase_quantize(t.v, q);
    CVec u_conj(t.u.size());
    for (size_t i = 0; i < t.u.size(); ++i) u_conj[i] = std::conj(t.u[i]);
    bp.w = phase_quantize(u_conj, q);
    return bp;
}

CVec steering_beamformer(double omega, int n, int q) {
    if (std::abs(omega) >= M_PI / 2.0)
        throw std::invalid_argument("steering_beamformer: |omega| must be below pi/2");
    CVec a = steering_vector(n, omega);
    for (cd& e : a) e = std::conj(e);
    return phase_quantize(a, q);
}

CMat effective_channel(const std::vector<std::vector<const CMat*>>& h,
                       const std::vector<CVec>& f, const std::vector<CVec>& w) {
    const int n_rf = static_cast<int>(h.size());
    if (n_rf == 0) throw std::invalid_argument("effective_channel: empty channel grid");
    const int n_users = static_cast<int>(h.front().size());
    if (static_cast<int>(f.size()) != n_users || static_cast<int>(w.size()) != n_rf)
        throw std::invalid_argument("effective_channel: beam count mismatch");

    CMat h_ul(n_rf, n_users);
    CVec t;
    for (int i = 0; i < n_rf; ++i) {
        for (int j = 0; j < n_users; ++j) {
            const CMat& hij = *h[i][j];
            if (hij.cols != static_cast<int>(f[j].size()) || hij.rows != static_cast<int>(w[i].size()))
                throw std::invalid_argument("effective_channel: dimension mismatch");
            t.assign(hij.rows, cd{0.0, 0.0});
            for (int r = 0; r < hij.rows; ++r)
                t[r] = kernels::dotu(hij.row(r), f[j].data(), f[j].size());
            h_ul(i, j) = kernels::dotu(w[i].data(), t.data(), t.size());
        }
    }
    return h_ul;
}

SinrRates mmse_sinr_rates(const CMat& h_ul, double snr_linear) {
    if (snr_linear <= 0.0) throw std::invalid_argument("mmse_sinr_rates: snr must be positive");
    const std::vector<double> diag = regularized_gram_inverse_diag(h_ul, snr_linear);
    SinrRates out;
    out.sinr.reserve(diag.size());
    out.rate.reserve(diag.size());
    for (double d : diag) {
        const double rho = std::max(0.0, snr_linear / d - 1.0);
        out.sinr.push_back(rho);
        out.rate.push_back(std::log2(1.0 + rho));
    }
    return out;
}

ScenarioRuntime build_runtime(const ScenarioConfig& cfg, double snr_db, int m_pilots) {
    validate_config(cfg);
    if (cfg.n_rf > 9)
        throw std::invalid_argument("build_runtime: at most 9 stations (distinct bearing set)");

    ScenarioRuntime rt;
    rt.cfg = cfg;
    rt.snr_db = snr_db;
    rt.m_cs = m_pilots;
    rt.ap = build_ap_layout(cfg.n, cfg.n_rf, cfg.wavelength_m, cfg.l_ap_m);

    rt.room.size_x = cfg.room.x_m;
    rt.room.size_y = cfg.room.y_m;
    rt.room.height = cfg.room.height_m;
    rt.room.ap_height = cfg.room.ap_height_m;
    rt.room.refl_side = cd{cfg.room.wall_reflection, 0.0};
    rt.room.refl_ceiling = cd{cfg.room.ceiling_reflection, 0.0};
    rt.room.refl_floor = cd{cfg.room.floor_reflection, 0.0};
    rt.room.floor_enabled = cfg.room.floor_enabled;

    rt.z = zc_sequence(cfg.n, cfg.zc_root);
    rt.z_quantized = phase_quantize(rt.z.z, cfg.q_bits);
    rt.mask = spectral_mask(rt.z);

    const double dev = alphabet_phase_deviation(rt.z.z, cfg.q_bits);
    if (dev > 1e-9) {
        static bool warned = false;
        if (!warned) {
            warned = true;
            std::fprintf(stderr,
                         "srlink: note: ZC(%d, %d) shifts deviate from the %d-bit alphabet by up "
                         "to %.4f rad; quantized training vectors are used where realizability "
                         "matters\n",
                         cfg.n, cfg.zc_root, cfg.q_bits, dev);
        }
    }

    rt.grid = AngularGrid::make(cfg.grid_deg / 180.0);
    // The steering model puts positive omega toward decreasing element
    // offsets, so the geometry factors are built with the offsets negated to
    // share the likelihoods' axis orientation (checked by the sign tests).
    for (int k = 0; k + 1 < cfg.n_rf; ++k) {
        const double la = -rt.ap.subarray_mid_offsets[k];
        const double lb = -rt.ap.subarray_mid_offsets[k + 1];
        rt.fwd_tables.push_back(build_factor_table(rt.grid, cfg.d_min_m, cfg.d_max_m, la, lb));
        rt.bwd_tables.push_back(build_factor_table(rt.grid, cfg.d_min_m, cfg.d_max_m, lb, la));
    }

    rt.snr_linear = std::pow(10.0, snr_db / 10.0);
    rt.pilot_snr_linear = std::isnan(cfg.pilot_snr_db) ? rt.snr_linear
                                                       : std::pow(10.0, cfg.pilot_snr_db / 10.0);
    if (std::isinf(cfg.pilot_snr_db)) rt.pilot_snr_linear = std::numeric_limits<double>::infinity();
    return rt;
}

namespace {

double pilot_sigma2(double signal_power, double pilot_snr_linear) {
    if (std::isinf(pilot_snr_linear)) return 0.0;
    return signal_power / pilot_snr_linear;
}

struct TrialContext {
    const ScenarioRuntime& rt;
    uint64_t seed;
    std::vector<ChannelSet> channels;  // per station
};

// station placement: bearings drawn without repetition from the 15-degree
// grid spanning +-60 degrees, tilts independently from the 10-degree grid
std::vector<ChannelSet> place_stations(const ScenarioRuntime& rt, uint64_t seed) {
    const ScenarioConfig& cfg = rt.cfg;
    Rng rng(derive_seed(seed, kPlacement));
    std::vector<int> gamma_idx{0, 1, 2, 3, 4, 5, 6, 7, 8};
    for (int i = 0; i < cfg.n_rf; ++i)
        std::swap(gamma_idx[i], gamma_idx[i + rng.uniform_int(9 - i)]);

    std::vector<ChannelSet> channels;
    channels.reserve(cfg.n_rf);
    for (int u = 0; u < cfg.n_rf; ++u) {
        const double gamma = (-75.0 + 15.0 * (gamma_idx[u] + 1)) * M_PI / 180.0;
        const double theta = 10.0 * (1 + rng.uniform_int(18)) * M_PI / 180.0;
        const StaPlacement sta = place_sta(rt.ap, cfg.d_m, gamma, theta, cfg.n, cfg.l_sta_m);
        channels.push_back(synthesize_channel(rt.ap, sta, rt.room));
    }
    return channels;
}

BeamPair beams_perfect(const TrialContext& ctx, int u) {
    return svd_beamformers(ctx.channels[u].subchannels[u], ctx.rt.cfg.q_bits);
}

BeamPair beams_cs(const TrialContext& ctx, int u, bool dynamic) {
    const ScenarioRuntime& rt = ctx.rt;
    Rng sched_rng(derive_seed(ctx.seed, kCsSchedule, u));
    Rng noise_rng(derive_seed(ctx.seed, kCsNoise, u));

    const ShiftSchedule schedule = draw_schedule(rt.m_cs, rt.cfg.n, rt.cfg.n_rf, sched_rng);
    const auto [f_slots, w_slots] = cs_pilot_beams(schedule, rt.z);
    const double sig = mean_signal_power(ctx.channels[u], f_slots, w_slots);
    const double sigma2 = pilot_sigma2(sig, rt.pilot_snr_linear);
    const MeasurementBatch batch =
        measure(ctx.channels[u], f_slots, w_slots, std::sqrt(sigma2), noise_rng);

    CMat s_hat;
    if (dynamic) {
        std::vector<CsOperator> ops;
        ops.reserve(rt.cfg.n_rf);
        for (int k = 0; k < rt.cfg.n_rf; ++k) ops.emplace_back(schedule, k);
        DcsOptions opts;
        opts.passes = rt.cfg.dcs_passes;
        opts.delta_e = rt.cfg.delta_e;
        const BeamspaceEstimate est = dcs_amp(batch.y, ops, sigma2, opts);
        s_hat = est.s_hat[u];
    } else {
        const CsOperator op(schedule, u);
        auto [res, prior] = em_bg_amp(batch.y[u], op, sigma2);
        s_hat = std::move(res.mean);
    }
    const CMat x_hat = mask_invert(rt.mask, s_hat);
    const CMat h_hat = beamspace_to_antenna(x_hat);
    return svd_beamformers(h_hat, rt.cfg.q_bits);
}

BeamPair beams_aoa(const TrialContext& ctx, int u, bool geometry_aided) {
    const ScenarioRuntime& rt = ctx.rt;
    const ScenarioConfig& cfg = rt.cfg;
    const int m_ap = std::max(2, rt.m_cs / 2);
    const int m_sta = std::max(2, rt.m_cs - rt.m_cs / 2);

    Rng probe_sched(derive_seed(ctx.seed, kProbeSchedule, u));
    Rng probe_noise(derive_seed(ctx.seed, kProbeNoise, u));

    // uplink: fixed quantized ZC at the station, per-subarray probe sets
    std::vector<CMat> psi(cfg.n_rf);
    for (int k = 0; k < cfg.n_rf; ++k)
        psi[k] = aoa_probe_schedule(m_ap, cfg.n, rt.z, probe_sched, cfg.q_bits);

    std::vector<CVec> f_slots(m_ap, rt.z_quantized);
    std::vector<std::vector<CVec>> w_slots(m_ap, std::vector<CVec>(cfg.n_rf));
    for (int m = 0; m < m_ap; ++m)
        for (int k = 0; k < cfg.n_rf; ++k) {
            w_slots[m][k].assign(psi[k].row(m), psi[k].row(m) + cfg.n);
        }

    const double sig_ul = mean_signal_power(ctx.channels[u], f_slots, w_slots);
    const double sigma2_ul = pilot_sigma2(sig_ul, rt.pilot_snr_linear);
    const MeasurementBatch batch =
        measure(ctx.channels[u], f_slots, w_slots, std::sqrt(sigma2_ul), probe_noise);

    std::vector<AngularBelief> lik(cfg.n_rf);
    for (int k = 0; k < cfg.n_rf; ++k) {
        const GainCompensation gc = gain_compensate(batch.y[k], psi[k](0, 0));
        lik[k] = aoa_likelihood(gc.y_tilde, psi[k], gc.alpha_hat, sigma2_ul, rt.grid, gc.degraded);
    }

    double omega_hat;
    if (geometry_aided) {
        const ForwardBackwardResult fb =
            forward_backward(lik, rt.fwd_tables, rt.bwd_tables, rt.grid);
        omega_hat = estimate_aoa(fb.combined[u], rt.grid);
    } else {
        omega_hat = estimate_aoa(lik[u], rt.grid);
    }

    BeamPair bp;
    bp.w = steering_beamformer(omega_hat, cfg.n, cfg.q_bits);

    // downlink: the dedicated subarray transmits with the steering beam and
    // the station localizes the downlink AoA with its own probe set
    const CMat& h_uu = ctx.channels[u].subchannels[u];
    CVec h_sta(cfg.n, cd{0.0, 0.0});
    for (int i = 0; i < cfg.n; ++i)
        for (int j = 0; j < cfg.n; ++j) h_sta[j] += h_uu(i, j) * bp.w[i];

    const uint64_t salt = geometry_aided ? 100 : 101;
    Rng dl_sched(derive_seed(ctx.seed, kDlSchedule, u, salt));
    Rng dl_noise(derive_seed(ctx.seed, kDlNoise, u, salt));
    const CMat psi_sta = aoa_probe_schedule(m_sta, cfg.n, rt.z, dl_sched, cfg.q_bits);
    // the receiver noise floor is a per-link constant anchored at the
    // quasi-omni pilot power, so the directional downlink training keeps the
    // transmit beamforming gain it was designed for
    const double sigma2_dl = sigma2_ul;
    const CVec y_dl = measure_vector(h_sta, psi_sta, std::sqrt(sigma2_dl), dl_noise);
    const double phi_hat = sta_ml_aoa(y_dl, psi_sta, sigma2_dl, rt.grid);
    bp.f = steering_beamformer(phi_hat, cfg.n, cfg.q_bits);
    return bp;
}

}  // namespace

LinkReport run_trial(const ScenarioRuntime& rt, Method method, uint64_t trial_seed) {
    const ScenarioConfig& cfg = rt.cfg;
    TrialContext ctx{rt, trial_seed, place_stations(rt, trial_seed)};

    LinkReport report;
    report.method = method;
    report.seed = trial_seed;

    std::vector<CVec> f(cfg.n_rf), w(cfg.n_rf);
    for (int u = 0; u < cfg.n_rf; ++u) {
        BeamPair bp;
        try {
            switch (method) {
                case Method::PerfectCsi: bp = beams_perfect(ctx, u); break;
                case Method::Amp: bp = beams_cs(ctx, u, false); break;
                case Method::DcsAmp: bp = beams_cs(ctx, u, true); break;
                case Method::Ml: bp = beams_aoa(ctx, u, false); break;
                case Method::Gmp: bp = beams_aoa(ctx, u, true); break;
            }
        } catch (const std::exception&) {
            bp.f = default_beam(cfg.n, cfg.q_bits);
            bp.w = default_beam(cfg.n, cfg.q_bits);
            bp.degraded = true;
        }
        report.degraded = report.degraded || bp.degraded;
        f[u] = std::move(bp.f);
        w[u] = std::move(bp.w);
    }

    std::vector<std::vector<const CMat*>> h(cfg.n_rf, std::vector<const CMat*>(cfg.n_rf));
    for (int i = 0; i < cfg.n_rf; ++i)
        for (int j = 0; j < cfg.n_rf; ++j) h[i][j] = &ctx.channels[j].subchannels[i];
    CMat h_ul = effective_channel(h, f, w);

    // normalize so the configured SNR is the post-beamforming operating
    // point: scale by the RMS top singular value of the direct subchannels
    // (method-independent, so paired comparisons are unaffected)
    double c2 = 0.0;
    for (int u = 0; u < cfg.n_rf; ++u) {
        const double s = spectral_norm(ctx.channels[u].subchannels[u]);
        c2 += s * s;
    }
    c2 /= cfg.n_rf;
    const double c = std::sqrt(c2);
    if (c > 0.0)
        for (cd& e : h_ul.a) e /= c;

    const SinrRates sr = mmse_sinr_rates(h_ul, rt.snr_linear);
    report.h_ul = std::move(h_ul);
    report.sinr = sr.sinr;
    report.rate = sr.rate;
    return report;
}

}  // namespace srlink
