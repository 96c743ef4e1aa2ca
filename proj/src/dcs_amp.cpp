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

#include "srlink/dcs_amp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "srlink/channel.hpp"
#include "srlink/kernels.hpp"

namespace srlink {

namespace {

constexpr double kEpsLo = 1e-4;
constexpr double kEpsHi = 0.5;
constexpr double kKappaHi = 0.99;
constexpr double kRhoLo = 1e-12;
constexpr double kHugeVar = 1e30;

double clip(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

// stable logistic
double logistic(double u) {
    if (u > 40.0) return 1.0;
    if (u < -40.0) return 0.0;
    return 1.0 / (1.0 + std::exp(-u));
}

struct DenoiseOut {
    cd mean;
    double var;
    double pi;
    cd mu_act;
    double v_act;
};

// Posterior of a Bernoulli-Gaussian coefficient under the pseudo-channel
// r = x + CN(0, tau).
inline DenoiseOut bg_denoise(cd r, double tau, double eps, cd zeta, double rho) {
    DenoiseOut o;
    const double q = rho + tau;
    o.mu_act = (zeta * tau + r * rho) / q;
    o.v_act = rho * tau / q;
    if (eps <= 0.0) {
        o.pi = 0.0;
    } else if (eps >= 1.0) {
        o.pi = 1.0;
    } else {
        const double log_l1 = -std::norm(r - zeta) / q - std::log(q);
        const double log_l0 = -std::norm(r) / tau - std::log(tau);
        o.pi = logistic(std::log(eps / (1.0 - eps)) + log_l1 - log_l0);
    }
    o.mean = o.pi * o.mu_act;
    o.var = std::max(0.0, o.pi * (o.v_act + std::norm(o.mu_act)) - std::norm(o.mean));
    return o;
}

}  // namespace

PriorField broadcast_prior(const BgPrior& prior, int n_coeff) {
    PriorField f;
    f.eps.assign(n_coeff, prior.eps);
    f.zeta.assign(n_coeff, prior.zeta);
    f.rho.assign(n_coeff, prior.rho);
    return f;
}

BgPrior default_prior_init(const CVec& y, double sigma2) {
    BgPrior p;
    p.sigma2 = sigma2;
    const double energy = kernels::sum_abs2(y.data(), y.size());
    p.rho = std::max(kRhoLo, energy / (static_cast<double>(y.size()) * p.eps));
    return p;
}

AmpResult bg_amp(const CVec& y, const CsOperator& op, const PriorField& prior, double sigma2,
                 const AmpOptions& opts) {
    const int n = op.n();
    const int n2 = n * n;
    const int m = op.m();
    if (static_cast<int>(y.size()) != m) throw std::invalid_argument("bg_amp: measurement size mismatch");
    if (static_cast<int>(prior.eps.size()) != n2) throw std::invalid_argument("bg_amp: prior size mismatch");

    const double y_power = kernels::sum_abs2(y.data(), y.size()) / std::max(1, m);
    const double tau_floor = 1e-30 * std::max(y_power, 1e-300);
    const double y_norm = std::sqrt(kernels::sum_abs2(y.data(), y.size()));

    AmpResult res;
    res.mean = CMat(n, n);
    res.variance = RMat(n, n);
    res.activity = RMat(n, n);
    res.mu_act = CMat(n, n);
    res.v_act = RMat(n, n);
    res.r = CMat(n, n);

    if (m == n2) {
        // complete sampling: the operator is unitary, so A^H y = s + A^H v
        // decouples the channel exactly and one denoise is the exact
        // posterior; the iterative approximation is only for the
        // sub-Nyquist regime
        res.r = op.adjoint(y);
        res.tau_r = std::max(sigma2, tau_floor);
        for (int j = 0; j < n2; ++j) {
            const DenoiseOut o =
                bg_denoise(res.r.a[j], res.tau_r, prior.eps[j], prior.zeta[j], prior.rho[j]);
            res.mean.a[j] = o.mean;
            res.variance.a[j] = o.var;
            res.activity.a[j] = o.pi;
            res.mu_act.a[j] = o.mu_act;
            res.v_act.a[j] = o.v_act;
        }
        const CVec ax = op.forward(res.mean);
        double rn = 0.0;
        for (int i = 0; i < m; ++i) rn += std::norm(y[i] - ax[i]);
        res.residual_norm = std::sqrt(rn);
        res.tau_emit = std::max(res.tau_r, rn / m);
        res.iterations = 1;
        return res;
    }

    // prior-mean initialization
    CMat x(n, n);
    std::vector<double> tau_x(n2);
    for (int j = 0; j < n2; ++j) {
        const cd pm = prior.eps[j] * prior.zeta[j];
        x.a[j] = pm;
        tau_x[j] = std::max(0.0, prior.eps[j] * (prior.rho[j] + std::norm(prior.zeta[j])) - std::norm(pm));
    }

    CVec s(m, cd{0.0, 0.0});
    CVec residual(m);
    double prev_norm = -1.0;
    double min_norm = 1e300;

    CMat best_x = x;
    std::vector<double> best_tau_x = tau_x;
    CMat best_r(n, n);
    double best_tau_r = 1.0;
    double best_norm = 1e300;
    bool have_best = false;

    double tau_r = 1.0;
    CMat r_mat(n, n);

    int it = 0;
    int growth_streak = 0;
    for (; it < opts.max_iters; ++it) {
        const CVec ax = op.forward(x);
        for (int i = 0; i < m; ++i) residual[i] = y[i] - ax[i];
        const double rn = std::sqrt(kernels::sum_abs2(residual.data(), residual.size()));
        res.residual_norm = rn;

        if (it > 0 && rn <= best_norm) {
            best_norm = rn;
            best_x = x;
            best_tau_x = tau_x;
            best_r = r_mat;
            best_tau_r = tau_r;
            have_best = true;
        }

        // sustained growth to 10x the best residual flags divergence; a
        // residual that is tiny relative to the data is converged noise
        if (rn > 10.0 * min_norm && rn > 1e-10 * y_norm)
            ++growth_streak;
        else
            growth_streak = 0;
        if (it > 1 && growth_streak >= 3) {
            res.diverged = true;
            break;
        }
        if (prev_norm >= 0.0 &&
            std::abs(rn - prev_norm) <= opts.tol * std::max(prev_norm, tau_floor))
            break;
        prev_norm = rn;
        min_norm = std::min(min_norm, rn);

        double tau_p = std::accumulate(tau_x.begin(), tau_x.end(), 0.0) / n2;
        tau_p = std::max(tau_p, tau_floor);
        const double v_eff = sigma2 + tau_p;

        // Onsager-corrected residual and measurement-side messages; damping,
        // when active, blends the dual state as well
        for (int i = 0; i < m; ++i) {
            const cd s_new = (residual[i] + tau_p * s[i]) / v_eff;
            s[i] = opts.damping > 0.0 ? (1.0 - opts.damping) * s_new + opts.damping * s[i] : s_new;
        }
        tau_r = v_eff * n2 / m;

        const CMat ah = op.adjoint(s);
        for (int j = 0; j < n2; ++j) r_mat.a[j] = x.a[j] + tau_r * ah.a[j];

        for (int j = 0; j < n2; ++j) {
            const DenoiseOut o = bg_denoise(r_mat.a[j], tau_r, prior.eps[j], prior.zeta[j], prior.rho[j]);
            if (opts.damping > 0.0) {
                x.a[j] = (1.0 - opts.damping) * o.mean + opts.damping * x.a[j];
                tau_x[j] = (1.0 - opts.damping) * o.var + opts.damping * tau_x[j];
            } else {
                x.a[j] = o.mean;
                tau_x[j] = o.var;
            }
            res.activity.a[j] = o.pi;
            res.mu_act.a[j] = o.mu_act;
            res.v_act.a[j] = o.v_act;
        }
    }
    res.iterations = it;

    if (res.diverged && have_best) {
        x = best_x;
        tau_x = best_tau_x;
        r_mat = best_r;
        tau_r = best_tau_r;
        res.residual_norm = best_norm;
        // refresh the posterior snapshot at the restored iterate
        for (int j = 0; j < n2; ++j) {
            const DenoiseOut o = bg_denoise(r_mat.a[j], tau_r, prior.eps[j], prior.zeta[j], prior.rho[j]);
            res.activity.a[j] = o.pi;
            res.mu_act.a[j] = o.mu_act;
            res.v_act.a[j] = o.v_act;
        }
    }

    res.mean = x;
    for (int j = 0; j < n2; ++j) res.variance.a[j] = tau_x[j];
    res.r = r_mat;
    res.tau_r = tau_r;
    res.tau_emit =
        std::max(tau_r, (res.residual_norm * res.residual_norm / m) * (static_cast<double>(n2) / m));
    return res;
}

AmpResult bg_amp(const CVec& y, const CsOperator& op, const BgPrior& prior,
                 const AmpOptions& opts) {
    return bg_amp(y, op, broadcast_prior(prior, op.n() * op.n()), prior.sigma2, opts);
}

AmpResult bg_amp_robust(const CVec& y, const CsOperator& op, const PriorField& prior,
                        double sigma2, const AmpOptions& opts) {
    AmpResult res = bg_amp(y, op, prior, sigma2, opts);
    if (!res.diverged) return res;
    AmpOptions damped = opts;
    damped.damping = 0.5;
    return bg_amp(y, op, prior, sigma2, damped);
}

BgPrior em_update(const std::vector<AmpResult>& planes, const std::vector<uint8_t>& group_of,
                  uint8_t group, const BgPrior& current) {
    if (planes.empty()) return current;
    const size_t n2 = planes.front().mean.size();
    if (group_of.size() != n2) throw std::invalid_argument("em_update: group mask size mismatch");

    double sum_pi = 0.0;
    cd sum_mu{0.0, 0.0};
    size_t cells = 0;
    for (const AmpResult& p : planes)
        for (size_t j = 0; j < n2; ++j) {
            if (group_of[j] != group) continue;
            sum_pi += p.activity.a[j];
            sum_mu += p.activity.a[j] * p.mu_act.a[j];
            ++cells;
        }
    if (cells == 0) return current;

    BgPrior next = current;
    next.eps = clip(sum_pi / static_cast<double>(cells), kEpsLo, kEpsHi);

    if (sum_pi > 1e-12) {
        next.zeta = sum_mu / sum_pi;
        double sum_var = 0.0;
        for (const AmpResult& p : planes)
            for (size_t j = 0; j < n2; ++j) {
                if (group_of[j] != group) continue;
                sum_var += p.activity.a[j] * (p.v_act.a[j] + std::norm(p.mu_act.a[j] - next.zeta));
            }
        next.rho = std::max(kRhoLo, sum_var / sum_pi);
    }

    // lag-1 statistics across adjacent planes
    if (planes.size() > 1) {
        double corr_num = 0.0, corr_den = 0.0;
        double act_trans = 0.0, act_base = 0.0;
        for (size_t k = 1; k < planes.size(); ++k) {
            const AmpResult& a = planes[k - 1];
            const AmpResult& b = planes[k];
            for (size_t j = 0; j < n2; ++j) {
                if (group_of[j] != group) continue;
                const double w = a.activity.a[j] * b.activity.a[j];
                corr_num += w * ((b.mu_act.a[j] - next.zeta) * std::conj(a.mu_act.a[j] - next.zeta)).real();
                corr_den += w;
                act_trans += b.activity.a[j] * (1.0 - a.activity.a[j]);
                act_base += 1.0 - a.activity.a[j];
            }
        }
        if (corr_den > 1e-12) next.kappa = clip(corr_num / (corr_den * next.rho), 0.0, kKappaHi);
        if (act_base > 1e-12) {
            const double p_act_max = next.eps >= 1.0 ? 1.0 : next.eps / (1.0 - next.eps);
            next.p_act = clip(act_trans / act_base, kEpsLo, std::min(1.0 - kEpsLo, p_act_max));
        }
    }
    return next;
}

std::pair<AmpResult, BgPrior> em_bg_amp(const CVec& y, const CsOperator& op, double sigma2,
                                        const AmpOptions& amp_opts, const EmOptions& em_opts) {
    BgPrior prior = default_prior_init(y, sigma2);
    AmpResult res;
    const std::vector<uint8_t> all(static_cast<size_t>(op.n()) * op.n(), 0);
    for (int i = 0; i < em_opts.iters; ++i) {
        res = bg_amp_robust(y, op, broadcast_prior(prior, op.n() * op.n()), sigma2, amp_opts);
        const BgPrior prev = prior;
        const std::vector<AmpResult> one{res};
        prior = em_update(one, all, 0, prior);
        prior.sigma2 = prev.sigma2;
        const double move = std::abs(prior.eps - prev.eps) / std::max(prev.eps, 1e-12) +
                            std::abs(prior.rho - prev.rho) / std::max(prev.rho, 1e-12) +
                            std::abs(prior.zeta - prev.zeta) / std::max(std::abs(prev.zeta), 1e-12);
        if (move < em_opts.rel_tol) break;
    }
    return {std::move(res), prior};
}

std::vector<uint8_t> group_active(const RMat& energy, double delta_e) {
    if (delta_e <= 0.0 || delta_e > 1.0) throw std::invalid_argument("group_active: delta_e must be in (0, 1]");
    const size_t n2 = energy.size();
    std::vector<uint8_t> mask(n2, 0);
    const double total = std::accumulate(energy.a.begin(), energy.a.end(), 0.0);
    if (total <= 0.0) return mask;  // all-zero energy: active set empty

    std::vector<size_t> order(n2);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (energy.a[a] != energy.a[b]) return energy.a[a] > energy.a[b];
        return a < b;
    });

    const double target = delta_e * total * (1.0 - 1e-12);
    double acc = 0.0;
    for (size_t idx : order) {
        if (acc >= target) break;
        acc += energy.a[idx];
        mask[idx] = 1;
    }
    return mask;
}

namespace {

// Per-plane cross-coefficient message state for the dynamic passes.
struct PlaneMessages {
    // forward direction: predicted beliefs p(state_k | evidence from planes < k)
    std::vector<double> fwd_act;
    CVec fwd_mu;
    std::vector<double> fwd_v;
    // backward direction: likelihoods p(evidence from planes > k | state_k)
    std::vector<double> bwd_m1;  // normalized pair (m0 = 1 - m1)
    CVec bwd_mu;
    std::vector<double> bwd_v;
};

struct Emission {
    CVec r;
    std::vector<double> pi;  // posterior activity used to scale the precision
    double tau = kHugeVar;
    bool valid = false;
};

// support-emission likelihood ratio p(r | active) / p(r | inactive) under the
// stationary amplitude prior of the coefficient's group
inline double support_lr(cd r, double tau, cd zeta, double rho) {
    const double q = rho + tau;
    const double log_lr = -std::norm(r - zeta) / q - std::log(q) + std::norm(r) / tau + std::log(tau);
    return std::exp(std::min(log_lr, 600.0));
}

}  // namespace

BeamspaceEstimate dcs_amp(const std::vector<CVec>& y, const std::vector<CsOperator>& ops,
                          double sigma2, const DcsOptions& opts) {
    const int n_rf = static_cast<int>(y.size());
    if (n_rf < 2) throw std::invalid_argument("dcs_amp: need at least two subchannels");
    if (ops.size() != y.size()) throw std::invalid_argument("dcs_amp: operator count mismatch");
    const int n = ops.front().n();
    const int n2 = n * n;

    BeamspaceEstimate est;
    est.s_hat.assign(n_rf, CMat(n, n));
    est.variance.assign(n_rf, RMat(n, n));

    std::vector<AmpResult> plane_res(n_rf);
    BgPrior prior[2];
    if (opts.fixed_prior) {
        est.group_of.assign(n2, 0);
        prior[0] = prior[1] = *opts.fixed_prior;
        prior[0].sigma2 = prior[1].sigma2 = sigma2;
    } else {
        // stage 1: independent per-plane recovery (the standard-AMP baseline)
        for (int k = 0; k < n_rf; ++k) {
            auto [res, plane_prior] = em_bg_amp(y[k], ops[k], sigma2, opts.amp);
            est.any_divergence = est.any_divergence || res.diverged;
            plane_res[k] = std::move(res);
        }

        // stage 2: energy split into potentially-active and inactive locations
        RMat energy(n, n);
        for (int k = 0; k < n_rf; ++k)
            for (int j = 0; j < n2; ++j) energy.a[j] += std::norm(plane_res[k].mean.a[j]);
        est.group_of = group_active(energy, opts.delta_e);

        // stage 3: group priors, pinned initialization
        for (int g = 0; g < 2; ++g) {
            double e = 0.0;
            for (int k = 0; k < n_rf; ++k) e += kernels::sum_abs2(y[k].data(), y[k].size());
            prior[g].sigma2 = sigma2;
            prior[g].rho =
                std::max(kRhoLo, e / (n_rf * static_cast<double>(ops.front().m()) * prior[g].eps));
        }
    }

    std::vector<PlaneMessages> msg(n_rf);
    for (auto& pm : msg) {
        pm.fwd_act.assign(n2, 0.0);
        pm.fwd_mu.assign(n2, cd{0.0, 0.0});
        pm.fwd_v.assign(n2, kHugeVar);
        pm.bwd_m1.assign(n2, 0.5);
        pm.bwd_mu.assign(n2, cd{0.0, 0.0});
        pm.bwd_v.assign(n2, kHugeVar);
    }
    std::vector<Emission> emit(n_rf);
    for (auto& e : emit) {
        e.r.assign(n2, cd{0.0, 0.0});
        e.pi.assign(n2, 0.0);
    }

    PriorField field;
    field.eps.resize(n2);
    field.zeta.resize(n2);
    field.rho.resize(n2);

    auto run_plane = [&](int k) {
        // combine stationary group prior with the incoming messages
        for (int j = 0; j < n2; ++j) {
            const BgPrior& g = prior[est.group_of[j]];
            const double a = msg[k].fwd_act[j];
            const double m1 = msg[k].bwd_m1[j];
            const double num = a * m1;
            const double den = num + (1.0 - a) * (1.0 - m1);
            field.eps[j] = clip(den > 0.0 ? num / den : g.eps, 1e-6, 1.0 - 1e-6);

            const double vf = msg[k].fwd_v[j];
            const double vb = msg[k].bwd_v[j];
            const cd mf = msg[k].fwd_mu[j];
            const cd mb = msg[k].bwd_mu[j];
            const double v = vf * vb / (vf + vb);
            field.zeta[j] = (mf * vb + mb * vf) / (vf + vb);
            field.rho[j] = std::min(v, kHugeVar);
        }
        AmpResult res = bg_amp_robust(y[k], ops[k], field, sigma2, opts.amp);
        est.any_divergence = est.any_divergence || res.diverged;
        emit[k].valid = !res.diverged;
        if (emit[k].valid) {
            emit[k].tau = res.tau_emit;
            for (int j = 0; j < n2; ++j) {
                emit[k].r[j] = res.r.a[j];
                emit[k].pi[j] = res.activity.a[j];
            }
        }
        plane_res[k] = std::move(res);
    };

    for (int pass = 0; pass < opts.passes; ++pass) {
        // forward sweep
        for (int k = 0; k < n_rf; ++k) {
            if (k == 0) {
                for (int j = 0; j < n2; ++j) {
                    const BgPrior& g = prior[est.group_of[j]];
                    msg[k].fwd_act[j] = g.eps;
                    msg[k].fwd_mu[j] = g.zeta;
                    msg[k].fwd_v[j] = g.rho;
                }
            }
            run_plane(k);
            if (k + 1 < n_rf) {
                for (int j = 0; j < n2; ++j) {
                    const BgPrior& g = prior[est.group_of[j]];
                    const double p01 = g.p_act;
                    const double p10 = clip(g.deactivation(), 0.0, 1.0);
                    double a_post = msg[k].fwd_act[j];
                    cd mu_post = msg[k].fwd_mu[j];
                    double v_post = msg[k].fwd_v[j];
                    if (emit[k].valid) {
                        const double lr = support_lr(emit[k].r[j], emit[k].tau, g.zeta, g.rho);
                        const double a = msg[k].fwd_act[j];
                        a_post = a * lr / (a * lr + (1.0 - a));
                        // precision-scaled Gaussian update of the amplitude belief
                        const double prec_obs = emit[k].pi[j] / emit[k].tau;
                        const double prec = 1.0 / v_post + prec_obs;
                        mu_post = (mu_post / v_post + prec_obs * emit[k].r[j]) / prec;
                        v_post = 1.0 / prec;
                    }
                    msg[k + 1].fwd_act[j] = a_post * (1.0 - p10) + (1.0 - a_post) * p01;
                    msg[k + 1].fwd_mu[j] = g.zeta + g.kappa * (mu_post - g.zeta);
                    msg[k + 1].fwd_v[j] =
                        std::min(kHugeVar, g.kappa * g.kappa * v_post + (1.0 - g.kappa * g.kappa) * g.rho);
                }
            }
        }
        // backward sweep
        for (int k = n_rf - 1; k >= 0; --k) {
            if (k == n_rf - 1) {
                for (int j = 0; j < n2; ++j) {
                    msg[k].bwd_m1[j] = 0.5;
                    msg[k].bwd_mu[j] = cd{0.0, 0.0};
                    msg[k].bwd_v[j] = kHugeVar;
                }
            }
            run_plane(k);
            if (k > 0) {
                for (int j = 0; j < n2; ++j) {
                    const BgPrior& g = prior[est.group_of[j]];
                    const double p01 = g.p_act;
                    const double p10 = clip(g.deactivation(), 0.0, 1.0);
                    // support: fold this plane's emission into the backward likelihood pair
                    double l1 = msg[k].bwd_m1[j];
                    double l0 = 1.0 - l1;
                    if (emit[k].valid) {
                        const double lr = support_lr(emit[k].r[j], emit[k].tau, g.zeta, g.rho);
                        l1 *= lr;
                        const double z = l0 + l1;
                        if (z > 0.0) {
                            l0 /= z;
                            l1 /= z;
                        }
                    }
                    const double m1 = (1.0 - p10) * l1 + p10 * l0;     // beta_{k-1} = 1
                    const double m0 = p01 * l1 + (1.0 - p01) * l0;     // beta_{k-1} = 0
                    const double z = m0 + m1;
                    msg[k - 1].bwd_m1[j] = z > 0.0 ? m1 / z : 0.5;

                    // amplitude likelihood through the reversed AR(1)
                    cd mu_like = msg[k].bwd_mu[j];
                    double v_like = msg[k].bwd_v[j];
                    if (emit[k].valid) {
                        const double prec_obs = emit[k].pi[j] / emit[k].tau;
                        const double prec = 1.0 / v_like + prec_obs;
                        mu_like = (mu_like / v_like + prec_obs * emit[k].r[j]) / prec;
                        v_like = 1.0 / prec;
                    }
                    if (g.kappa > 1e-6 && v_like < kHugeVar * 0.1) {
                        msg[k - 1].bwd_mu[j] = g.zeta + (mu_like - g.zeta) / g.kappa;
                        msg[k - 1].bwd_v[j] = std::min(
                            kHugeVar, (v_like + (1.0 - g.kappa * g.kappa) * g.rho) / (g.kappa * g.kappa));
                    } else {
                        msg[k - 1].bwd_mu[j] = cd{0.0, 0.0};
                        msg[k - 1].bwd_v[j] = kHugeVar;
                    }
                }
            }
        }
        // per-group EM refresh from the freshest posteriors
        if (opts.em_enabled) {
            for (int g = 0; g < 2; ++g) {
                const double s2 = prior[g].sigma2;
                prior[g] = em_update(plane_res, est.group_of, static_cast<uint8_t>(g), prior[g]);
                prior[g].sigma2 = s2;
            }
        }
    }

    for (int k = 0; k < n_rf; ++k) {
        est.s_hat[k] = plane_res[k].mean;
        est.variance[k] = plane_res[k].variance;
    }
    est.prior_group[0] = prior[0];
    est.prior_group[1] = prior[1];
    return est;
}

std::pair<std::vector<CMat>, std::vector<CMat>> unmask_reconstruct(
    const std::vector<CMat>& s_hat, const SpectralMask& mask) {
    std::vector<CMat> x_hat, h_hat;
    x_hat.reserve(s_hat.size());
    h_hat.reserve(s_hat.size());
    for (const CMat& s : s_hat) {
        CMat x = mask_invert(mask, s);
        h_hat.push_back(beamspace_to_antenna(x));
        x_hat.push_back(std::move(x));
    }
    return {std::move(x_hat), std::move(h_hat)};
}

}  // namespace srlink
