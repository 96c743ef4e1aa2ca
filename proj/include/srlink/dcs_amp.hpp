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
#include <optional>
#include <utility>
#include <vector>

#include "srlink/acquisition.hpp"
#include "srlink/cmat.hpp"
#include "srlink/codebook.hpp"

namespace srlink {

/// Bernoulli-Gaussian prior with the cross-subchannel dynamics parameters.
/// Support follows a binary Markov chain with activation probability p_act
/// (inactive -> active); the deactivation probability p_act (1 - eps) / eps
/// is implied by stationarity at activity eps. Amplitudes follow the
/// stationary AR(1) eta_k = zeta + kappa (eta_{k-1} - zeta) + sqrt(1-kappa^2) u_k
/// with u_k ~ CN(0, rho), so zeta, rho and kappa are exactly the stationary
/// mean, variance and lag-1 correlation.
struct BgPrior {
    double eps = 0.05;
    cd zeta{0.0, 0.0};
    double rho = 1.0;
    double kappa = 0.5;
    double p_act = 0.05;
    double sigma2 = 0.0;

    double deactivation() const { return eps > 0.0 ? p_act * (1.0 - eps) / eps : 1.0; }
};

/// Per-coefficient Bernoulli-Gaussian prior field (what the cross-plane
/// messages produce for the within-plane solver).
struct PriorField {
    std::vector<double> eps;
    CVec zeta;
    std::vector<double> rho;
};

PriorField broadcast_prior(const BgPrior& prior, int n_coeff);

struct AmpOptions {
    int max_iters = 25;
    double tol = 1e-6;
    double damping = 0.0;  // blend factor toward the previous iterate
};

struct AmpResult {
    CMat mean;       // posterior means, n x n
    RMat variance;   // posterior variances
    RMat activity;   // posterior support probabilities
    CMat mu_act;     // active-conditional posterior means
    RMat v_act;      // active-conditional posterior variances
    CMat r;          // extrinsic pseudo-measurements from the measurement side
    double tau_r = 0.0;
    /// Residual-calibrated variance for the (r, tau) messages: equals tau_r
    /// when the model explains the data, and inflates when the residual
    /// exceeds the noise budget (off-grid leakage), so downstream consumers
    /// are not overconfident.
    double tau_emit = 0.0;
    double residual_norm = 0.0;
    int iterations = 0;
    bool diverged = false;
};

/// Bernoulli-Gaussian AMP on a partial-2D-DFT operator, scalar-variance
/// form with Onsager correction. Returns posterior moments plus the
/// likelihood-only (r, tau_r) messages the cross-plane passes consume.
/// Divergence (residual growing 10x over its minimum) is flagged; the best
/// iterate seen is returned in that case.
AmpResult bg_amp(const CVec& y, const CsOperator& op, const PriorField& prior, double sigma2,
                 const AmpOptions& opts = {});
AmpResult bg_amp(const CVec& y, const CsOperator& op, const BgPrior& prior,
                 const AmpOptions& opts = {});

/// bg_amp with one damped retry on divergence.
AmpResult bg_amp_robust(const CVec& y, const CsOperator& op, const PriorField& prior,
                        double sigma2, const AmpOptions& opts = {});

/// Pinned initialization: eps = 0.05, zeta = 0, rho = |y|^2 / (M eps),
/// kappa = 0.5, p_act = 0.05.
BgPrior default_prior_init(const CVec& y, double sigma2);

struct EmOptions {
    int iters = 8;
    double rel_tol = 1e-3;
    bool learn_sigma2 = false;
};

/// Closed-form EM re-estimate of (eps, zeta, rho, kappa, p_act) for the
/// coefficients of one group, from the per-plane posteriors. Parameters are
/// clipped to eps in [1e-4, 0.5], kappa in [0, 0.99], rho >= 1e-12, and
/// p_act to the range keeping the implied deactivation probability valid.
/// An empty group leaves the prior unchanged.
BgPrior em_update(const std::vector<AmpResult>& planes, const std::vector<uint8_t>& group_of,
                  uint8_t group, const BgPrior& current);

/// Per-plane AMP with EM learning of (eps, zeta, rho) — the standard
/// independent-subchannel estimator.
std::pair<AmpResult, BgPrior> em_bg_amp(const CVec& y, const CsOperator& op, double sigma2,
                                        const AmpOptions& amp_opts = {},
                                        const EmOptions& em_opts = {});

/// Splits coefficient locations into the minimal set of largest entries of
/// the energy matrix holding at least delta_e of its total (returns 1), and
/// the complement (returns 0).
std::vector<uint8_t> group_active(const RMat& energy, double delta_e);

struct DcsOptions {
    int passes = 12;  // forward+backward round trips
    double delta_e = 0.9;
    AmpOptions amp;
    bool em_enabled = true;
    /// When set, both groups start from this prior and the per-plane EM
    /// seeding stage is skipped (used to pin the chain parameters in tests).
    std::optional<BgPrior> fixed_prior;
};

struct BeamspaceEstimate {
    std::vector<CMat> s_hat;       // posterior means per subchannel
    std::vector<RMat> variance;
    BgPrior prior_group[2];        // learned parameters (0 = inactive set, 1 = active set)
    std::vector<uint8_t> group_of; // per coefficient
    bool any_divergence = false;
};

/// Cross-subchannel AMP: per-plane EM-BG-AMP seeds an energy-based two-group
/// prior, then T forward+backward passes exchange binary-Markov support
/// messages and Gauss-Markov amplitude messages between adjacent planes, with
/// per-group EM refreshes after every pass.
BeamspaceEstimate dcs_amp(const std::vector<CVec>& y, const std::vector<CsOperator>& ops,
                          double sigma2, const DcsOptions& opts = {});

/// Invert the spectral mask and return (beamspace, antenna-domain) estimates.
std::pair<std::vector<CMat>, std::vector<CMat>> unmask_reconstruct(
    const std::vector<CMat>& s_hat, const SpectralMask& mask);

}  // namespace srlink
