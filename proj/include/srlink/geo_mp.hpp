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

#include <optional>
#include <vector>

#include "srlink/acquisition.hpp"
#include "srlink/cmat.hpp"

namespace srlink {

/// Uniform grid of candidate local AoAs: bin centers spaced delta_omega * pi
/// across (-pi/2, pi/2), endpoints excluded.
struct AngularGrid {
    double delta_omega = 1.0 / 180.0;
    std::vector<double> angles;

    static AngularGrid make(double delta_omega);
    int size() const { return static_cast<int>(angles.size()); }
    /// Index of the bin whose center is nearest to omega.
    int nearest_bin(double omega) const;
};

/// Normalized probability mass over the grid angles.
struct AngularBelief {
    std::vector<double> weights;
};

/// Half-wavelength ULA response a_N(omega)[n] = e^{-j n pi sin omega}.
CVec steering_vector(int n, double omega);

/// N x G matrix of steering vectors over the grid columns.
CMat steering_matrix(int n, const AngularGrid& grid);

/// Conditional mass p(omega_out | omega_in) induced by the subarray offsets
/// (l_a -> l_b) and a uniform prior on the transceiver distance. Rows are
/// indexed by omega_in and sum to one. Computable offline and shared.
struct GeometryFactorTable {
    RMat p;    // grid x grid, row-stochastic: p(in, out)
    RMat p_t;  // transposed copy, laid out for the message matvec
    double d_min = 0.0, d_max = 0.0;
    double l_a = 0.0, l_b = 0.0;
};

/// Grid likelihood of the local AoA from gain-compensated measurements:
/// w(omega) proportional to exp(-|alpha|^2 ||y_tilde - Psi a(omega)||^2 / sigma^2),
/// evaluated in the log domain. A degraded gain estimate yields the uniform
/// belief.
AngularBelief aoa_likelihood(const CVec& y_tilde, const CMat& psi, cd alpha_hat, double sigma2,
                             const AngularGrid& grid, bool degraded = false);

/// Local AoA at offset l_b implied by the AoA omega_a seen at offset l_a and
/// the midpoint distance d. Empty when no positive-range solution exists.
std::optional<double> geometry_map(double omega_a, double d, double l_a, double l_b);

GeometryFactorTable build_factor_table(const AngularGrid& grid, double d_min, double d_max,
                                       double l_a, double l_b, int n_samples = 2000);

/// One forward and one backward pass over the chain of local-AoA nodes.
/// fwd_tables[k] maps node k to node k+1; bwd_tables[k] maps node k+1 to
/// node k. Returns the combined per-node beliefs
/// p(omega_k) * P_in_fwd(omega_k) * P_in_bwd(omega_k), plus the two incoming
/// message sets when requested (for diagnostics dumps).
struct ForwardBackwardResult {
    std::vector<AngularBelief> combined;
    std::vector<AngularBelief> fwd_in;
    std::vector<AngularBelief> bwd_in;
};

ForwardBackwardResult forward_backward(const std::vector<AngularBelief>& likelihoods,
                                       const std::vector<GeometryFactorTable>& fwd_tables,
                                       const std::vector<GeometryFactorTable>& bwd_tables,
                                       const AngularGrid& grid);

/// Grid angle of maximum weight; exact ties resolve to the smaller angle.
double estimate_aoa(const AngularBelief& belief, const AngularGrid& grid);

/// Station-side ML AoA from downlink probe measurements: gain compensation,
/// grid likelihood, argmax. Degraded gain estimates fall back to the uniform
/// belief (whose argmax is the smallest grid angle).
double sta_ml_aoa(const CVec& y, const CMat& psi, double sigma2, const AngularGrid& grid);

}  // namespace srlink
