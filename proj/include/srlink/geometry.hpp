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

#include <array>
#include <vector>

#include "srlink/cmat.hpp"

namespace srlink {

using Vec2 = std::array<double, 2>;

// All geometry lives in a common horizontal plane. The coordinate frame is
// local to the access point: the array runs along the x axis, centered at the
// origin, and the array normal points along +y. The station bearing gamma is
// measured from that normal, positive toward increasing x; the station tilt
// theta is measured from the x axis.

/// Access-point array: n_subarrays uniform linear subarrays of n_per_subarray
/// elements at exactly half-wavelength pitch, separated by equal edge-to-edge
/// gaps so that the extreme elements span exactly l_ap.
struct ApLayout {
    std::vector<Vec2> element_positions;       // n_per_subarray * n_subarrays
    std::vector<double> subarray_mid_offsets;  // signed midpoint offsets, one per subarray
    int n_per_subarray = 0;
    int n_subarrays = 0;
    double wavelength = 0.0;
    double l_ap = 0.0;
    double subarray_span = 0.0;  // (n_per_subarray - 1) * wavelength / 2
    double gap = 0.0;            // edge element to edge element
};

/// Station array placed by (d, gamma, theta): midpoint at distance d from the
/// AP array midpoint along bearing gamma, elements at half-wavelength pitch
/// along direction theta.
struct StaPlacement {
    std::vector<Vec2> element_positions;
    double d = 0.0;
    double gamma = 0.0;
    double theta = 0.0;
    double span = 0.0;  // electrical span (n - 1) * wavelength / 2
    int n = 0;
};

struct DistanceMatrix {
    RMat d;  // (n_per_subarray * n_subarrays) x n_sta
};

ApLayout build_ap_layout(int n, int n_rf, double wavelength, double l_ap);

/// Places a station. l_sta is the nominal array footprint; it is accepted if
/// it agrees with the electrical span (n - 1) * wavelength / 2 to within one
/// wavelength, which covers both the (n-1)- and n-pitch span conventions.
StaPlacement place_sta(const ApLayout& ap, double d, double gamma, double theta, int n,
                       double l_sta);

DistanceMatrix pairwise_distances(const ApLayout& ap, const StaPlacement& sta);

}  // namespace srlink
