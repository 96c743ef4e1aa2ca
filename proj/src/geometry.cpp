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

#include "srlink/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace srlink {

ApLayout build_ap_layout(int n, int n_rf, double wavelength, double l_ap) {
    if (n < 2) throw std::invalid_argument("build_ap_layout: need at least 2 elements per subarray");
    if (n_rf < 1) throw std::invalid_argument("build_ap_layout: need at least 1 subarray");
    if (wavelength <= 0.0) throw std::invalid_argument("build_ap_layout: wavelength must be positive");

    const double pitch = wavelength / 2.0;
    const double span = (n - 1) * pitch;

    ApLayout ap;
    ap.n_per_subarray = n;
    ap.n_subarrays = n_rf;
    ap.wavelength = wavelength;
    ap.l_ap = l_ap;
    ap.subarray_span = span;

    if (n_rf == 1) {
        if (std::abs(l_ap - span) > 1e-12)
            throw std::invalid_argument("build_ap_layout: with one subarray l_ap must equal the subarray span");
        ap.gap = 0.0;
    } else {
        const double gap = (l_ap - n_rf * span) / (n_rf - 1);
        if (gap < 0.0)
            throw std::invalid_argument("build_ap_layout: l_ap too small to hold the subarrays (negative gap)");
        ap.gap = gap;
    }

    const double x0 = -l_ap / 2.0;
    const double stride = span + ap.gap;  // first element of one subarray to the next
    ap.element_positions.reserve(static_cast<size_t>(n) * n_rf);
    ap.subarray_mid_offsets.reserve(n_rf);
    for (int k = 0; k < n_rf; ++k) {
        const double start = x0 + k * stride;
        for (int i = 0; i < n; ++i) ap.element_positions.push_back({start + i * pitch, 0.0});
        ap.subarray_mid_offsets.push_back(start + span / 2.0);
    }
    return ap;
}

StaPlacement place_sta(const ApLayout& ap, double d, double gamma, double theta, int n,
                       double l_sta) {
    if (d <= 0.0) throw std::invalid_argument("place_sta: d must be positive");
    if (std::abs(gamma) >= M_PI / 2.0)
        throw std::invalid_argument("place_sta: |gamma| must be below pi/2");
    if (n < 1) throw std::invalid_argument("place_sta: n must be positive");

    const double pitch = ap.wavelength / 2.0;
    const double span = (n - 1) * pitch;
    if (std::abs(l_sta - span) > ap.wavelength)
        throw std::invalid_argument("place_sta: l_sta inconsistent with a half-wavelength array of n elements");

    StaPlacement sta;
    sta.d = d;
    sta.gamma = gamma;
    sta.theta = theta;
    sta.n = n;
    sta.span = span;

    const Vec2 mid{d * std::sin(gamma), d * std::cos(gamma)};
    const Vec2 dir{std::cos(theta), std::sin(theta)};
    sta.element_positions.reserve(n);
    for (int j = 0; j < n; ++j) {
        const double u = (j - (n - 1) / 2.0) * pitch;
        sta.element_positions.push_back({mid[0] + u * dir[0], mid[1] + u * dir[1]});
    }

    // degenerate overlap guard
    for (const auto& pe : sta.element_positions)
        for (const auto& pa : ap.element_positions) {
            const double dx = pe[0] - pa[0];
            const double dy = pe[1] - pa[1];
            if (dx * dx + dy * dy <= 0.0)
                throw std::invalid_argument("place_sta: station element coincides with an AP element");
        }
    return sta;
}

DistanceMatrix pairwise_distances(const ApLayout& ap, const StaPlacement& sta) {
    const int rows = static_cast<int>(ap.element_positions.size());
    const int cols = static_cast<int>(sta.element_positions.size());
    DistanceMatrix dm;
    dm.d = RMat(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Vec2& pa = ap.element_positions[i];
        for (int j = 0; j < cols; ++j) {
            const Vec2& ps = sta.element_positions[j];
            dm.d(i, j) = std::hypot(ps[0] - pa[0], ps[1] - pa[1]);
        }
    }
    return dm;
}

}  // namespace srlink
