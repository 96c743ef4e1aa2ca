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

#include "srlink/geo_mp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "srlink/kernels.hpp"

namespace srlink {

AngularGrid AngularGrid::make(double delta_omega) {
    if (delta_omega <= 0.0 || delta_omega >= 1.0)
        throw std::invalid_argument("AngularGrid: delta_omega must be in (0, 1)");
    AngularGrid g;
    g.delta_omega = delta_omega;
    const int bins = static_cast<int>(std::lround(1.0 / delta_omega));
    const double step = M_PI * delta_omega;
    g.angles.reserve(bins);
    for (int i = 0; i < bins; ++i) g.angles.push_back(-M_PI / 2.0 + (i + 0.5) * step);
    return g;
}

int AngularGrid::nearest_bin(double omega) const {
    const double step = M_PI * delta_omega;
    int i = static_cast<int>(std::lround((omega + M_PI / 2.0) / step - 0.5));
    return std::clamp(i, 0, size() - 1);
}

CVec steering_vector(int n, double omega) {
    CVec a(n);
    const double slope = -M_PI * std::sin(omega);
    for (int i = 0; i < n; ++i) {
        const double phase = slope * i;
        a[i] = cd{std::cos(phase), std::sin(phase)};
    }
    return a;
}

CMat steering_matrix(int n, const AngularGrid& grid) {
    CMat m(n, grid.size());
    for (int g = 0; g < grid.size(); ++g) {
        const CVec a = steering_vector(n, grid.angles[g]);
        for (int i = 0; i < n; ++i) m(i, g) = a[i];
    }
    return m;
}

namespace {

AngularBelief uniform_belief(const AngularGrid& grid) {
    AngularBelief b;
    b.weights.assign(grid.size(), 1.0 / grid.size());
    return b;
}

void normalize_log_weights(std::vector<double>& logw, std::vector<double>& out) {
    const double mx = *std::max_element(logw.begin(), logw.end());
    out.resize(logw.size());
    double sum = 0.0;
    for (size_t i = 0; i < logw.size(); ++i) {
        out[i] = std::exp(logw[i] - mx);
        sum += out[i];
    }
    for (double& w : out) w /= sum;
}

}  // namespace

AngularBelief aoa_likelihood(const CVec& y_tilde, const CMat& psi, cd alpha_hat, double sigma2,
                             const AngularGrid& grid, bool degraded) {
    if (degraded) return uniform_belief(grid);
    const int m = psi.rows;
    const int n = psi.cols;
    if (static_cast<int>(y_tilde.size()) != m)
        throw std::invalid_argument("aoa_likelihood: measurement size mismatch");

    const double power = kernels::sum_abs2(y_tilde.data(), y_tilde.size()) / std::max(1, m);
    const double s2 = std::max(sigma2, 1e-18 * std::max(power, 1e-300));
    const double scale = std::norm(alpha_hat) / s2;

    const CMat a_grid = steering_matrix(n, grid);
    std::vector<double> logw(grid.size());
    for (int g = 0; g < grid.size(); ++g) {
        double r2 = 0.0;
        for (int i = 0; i < m; ++i) {
            cd p{0.0, 0.0};
            const cd* row = psi.row(i);
            for (int j = 0; j < n; ++j) p += row[j] * a_grid(j, g);
            r2 += std::norm(y_tilde[i] - p);
        }
        logw[g] = -scale * r2;
    }
    AngularBelief b;
    normalize_log_weights(logw, b.weights);
    return b;
}

std::optional<double> geometry_map(double omega_a, double d, double l_a, double l_b) {
    const double s = std::sin(omega_a);
    const double c = std::cos(omega_a);
    const double disc = d * d - l_a * l_a * c * c;
    if (disc < 0.0) return std::nullopt;
    const double d1 = -l_a * s + std::sqrt(disc);
    if (d1 <= 0.0) return std::nullopt;
    return std::atan((l_a - l_b + d1 * s) / (d1 * c));
}

GeometryFactorTable build_factor_table(const AngularGrid& grid, double d_min, double d_max,
                                       double l_a, double l_b, int n_samples) {
    if (d_min <= 0.0 || d_max < d_min) throw std::invalid_argument("build_factor_table: bad distance range");
    if (n_samples < 1) throw std::invalid_argument("build_factor_table: n_samples must be positive");

    const int g = grid.size();
    GeometryFactorTable t;
    t.d_min = d_min;
    t.d_max = d_max;
    t.l_a = l_a;
    t.l_b = l_b;
    t.p = RMat(g, g);

    for (int in = 0; in < g; ++in) {
        double* row = t.p.row(in);
        double mass = 0.0;
        for (int s = 0; s < n_samples; ++s) {
            const double r = d_min + (s + 0.5) * (d_max - d_min) / n_samples;
            const auto out = geometry_map(grid.angles[in], r, l_a, l_b);
            if (!out) continue;
            row[grid.nearest_bin(*out)] += 1.0;
            mass += 1.0;
        }
        if (mass == 0.0) {
            for (int out = 0; out < g; ++out) row[out] = 1.0 / g;
        } else {
            for (int out = 0; out < g; ++out) row[out] /= mass;
        }
    }

    t.p_t = RMat(g, g);
    for (int in = 0; in < g; ++in)
        for (int out = 0; out < g; ++out) t.p_t(out, in) = t.p(in, out);
    return t;
}

namespace {

// belief product with renormalization; falls back to the second factor when
// the product underflows to zero everywhere
std::vector<double> product_normalized(const std::vector<double>& a, const std::vector<double>& b,
                                       const std::vector<double>& fallback) {
    std::vector<double> out(a.size());
    double sum = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] * b[i];
        sum += out[i];
    }
    if (sum <= 0.0) return fallback;
    for (double& w : out) w /= sum;
    return out;
}

std::vector<double> push_through(const GeometryFactorTable& t, const std::vector<double>& msg) {
    std::vector<double> out(msg.size());
    kernels::real_matvec(t.p_t.data(), msg.data(), out.data(), msg.size(), msg.size());
    double sum = 0.0;
    for (double w : out) sum += w;
    if (sum > 0.0)
        for (double& w : out) w /= sum;
    else
        out.assign(msg.size(), 1.0 / msg.size());
    return out;
}

}  // namespace

ForwardBackwardResult forward_backward(const std::vector<AngularBelief>& likelihoods,
                                       const std::vector<GeometryFactorTable>& fwd_tables,
                                       const std::vector<GeometryFactorTable>& bwd_tables,
                                       const AngularGrid& grid) {
    const size_t n_nodes = likelihoods.size();
    if (n_nodes == 0) throw std::invalid_argument("forward_backward: no nodes");
    if (fwd_tables.size() != n_nodes - 1 || bwd_tables.size() != n_nodes - 1)
        throw std::invalid_argument("forward_backward: table count mismatch");

    const std::vector<double> uniform(grid.size(), 1.0 / grid.size());
    ForwardBackwardResult res;
    res.fwd_in.resize(n_nodes);
    res.bwd_in.resize(n_nodes);
    res.combined.resize(n_nodes);

    // forward pass
    res.fwd_in[0].weights = uniform;
    for (size_t k = 0; k + 1 < n_nodes; ++k) {
        const std::vector<double> out =
            product_normalized(likelihoods[k].weights, res.fwd_in[k].weights, likelihoods[k].weights);
        res.fwd_in[k + 1].weights = push_through(fwd_tables[k], out);
    }
    // backward pass
    res.bwd_in[n_nodes - 1].weights = uniform;
    for (size_t k = n_nodes - 1; k > 0; --k) {
        const std::vector<double> out =
            product_normalized(likelihoods[k].weights, res.bwd_in[k].weights, likelihoods[k].weights);
        res.bwd_in[k - 1].weights = push_through(bwd_tables[k - 1], out);
    }
    // combination
    for (size_t k = 0; k < n_nodes; ++k) {
        const std::vector<double> partial =
            product_normalized(likelihoods[k].weights, res.fwd_in[k].weights, likelihoods[k].weights);
        res.combined[k].weights =
            product_normalized(partial, res.bwd_in[k].weights, likelihoods[k].weights);
    }
    return res;
}

double estimate_aoa(const AngularBelief& belief, const AngularGrid& grid) {
    if (belief.weights.size() != static_cast<size_t>(grid.size()))
        throw std::invalid_argument("estimate_aoa: belief/grid size mismatch");
    int best = 0;
    for (int i = 1; i < grid.size(); ++i)
        if (belief.weights[i] > belief.weights[best]) best = i;
    return grid.angles[best];
}

double sta_ml_aoa(const CVec& y, const CMat& psi, double sigma2, const AngularGrid& grid) {
    const GainCompensation g = gain_compensate(y, psi(0, 0));
    const AngularBelief b = aoa_likelihood(g.y_tilde, psi, g.alpha_hat, sigma2, grid, g.degraded);
    return estimate_aoa(b, grid);
}

}  // namespace srlink
