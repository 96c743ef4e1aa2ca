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

#include <vector>

#include "srlink/cmat.hpp"
#include "srlink/geometry.hpp"

namespace srlink {

/// Indoor room for the image-method reflections. The room occupies
/// [0, size_x] x [0, size_y] x [0, height]; the AP is wall-mounted on the
/// y = size_y wall at ap_height, centered in x and oriented along x; stations
/// lie on the z = ap_height plane in front of it. One- and two-bounce images
/// are taken across the two side walls (x = 0, x = size_x) and the ceiling.
/// Floor reflections are off by default (heavily scattering floor) but can be
/// enabled, which adds the corresponding one- and two-bounce images.
struct RoomSpec {
    double size_x = 5.0;
    double size_y = 5.0;
    double height = 3.0;
    double ap_height = 1.5;
    cd refl_side = {-0.6, 0.0};     // both side walls
    cd refl_ceiling = {-0.6, 0.0};
    cd refl_floor = {-0.6, 0.0};
    bool floor_enabled = false;

    /// LoS-only room: every reflection coefficient zero.
    static RoomSpec los_only();
};

/// The synthesized channel and its derived views: per-subarray subchannels
/// H_k (stacking them reproduces H exactly) and their beamspace transforms
/// X_k with H_k = U X_k U.
struct ChannelSet {
    CMat h;                        // (n * n_rf) x n
    std::vector<CMat> subchannels; // n_rf blocks, n x n
    std::vector<CMat> beamspace;   // X_k = conj(U) H_k conj(U)
    double wavelength = 0.0;
    int n = 0;
    int n_rf = 0;
};

struct EnergyMetrics {
    double full = 0.0;       // fraction of energy in the rank-one approximation of H
    double subarrays = 0.0;  // same fraction averaged over the subchannels
};

/// Free-space response (lambda / 4 pi d) e^{-j 2 pi d / lambda} per element pair.
CMat los_channel(const DistanceMatrix& distances, double wavelength);

/// LoS ray plus one- and two-bounce mirror images in the room. With all
/// reflection coefficients zero this equals los_channel bit for bit.
ChannelSet synthesize_channel(const ApLayout& ap, const StaPlacement& sta, const RoomSpec& room);

EnergyMetrics energy_metrics(const ChannelSet& channel);

/// Two-sided inverse unitary DFT: the X with H = U X U.
CMat beamspace(const CMat& subchannel);

/// Inverse of beamspace(): reconstructs H = U X U.
CMat beamspace_to_antenna(const CMat& x);

/// Text channel dump for cross-implementation comparison: a header line with
/// n, n_rf and the wavelength, then the full matrix row-major as
/// "re im re im ..." lines.
void dump_channel(const ChannelSet& channel, const std::string& path);
ChannelSet load_channel(const std::string& path);

}  // namespace srlink
