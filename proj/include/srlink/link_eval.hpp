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
#include <vector>

#include "srlink/channel.hpp"
#include "srlink/cmat.hpp"
#include "srlink/codebook.hpp"
#include "srlink/geo_mp.hpp"
#include "srlink/geometry.hpp"
#include "srlink/scenario.hpp"

namespace srlink {

struct BeamPair {
    CVec f;  // station transmit beam
    CVec w;  // AP receive beam
    bool degraded = false;
};

/// Quantized dominant-singular-pair beams. The global phase of each singular
/// vector is fixed (largest-magnitude entry made real positive) before
/// quantization so the result is deterministic across linear-algebra
/// backends. A zero input yields the all-phase-zero default pair, flagged.
BeamPair svd_beamformers(const CMat& h_hat, int q);

/// q-bit quantized conjugate steering beam toward omega.
CVec steering_beamformer(double omega, int n, int q);

/// Effective multi-user uplink channel: out(i, j) = w_i^T H_{i,j} f_j, where
/// h[i][j] is the subchannel between station j and subarray i.
CMat effective_channel(const std::vector<std::vector<const CMat*>>& h,
                       const std::vector<CVec>& f, const std::vector<CVec>& w);

struct SinrRates {
    std::vector<double> sinr;  // linear
    std::vector<double> rate;  // bits/s/Hz, log2(1 + sinr)
};

/// Post-MMSE per-user SINR and achievable rate:
/// sinr_k = snr / [(H^H H + I/snr)^{-1}]_{kk} - 1.
SinrRates mmse_sinr_rates(const CMat& h_ul, double snr_linear);

struct LinkReport {
    CMat h_ul;  // normalized effective channel this report was scored on
    std::vector<double> sinr;
    std::vector<double> rate;
    Method method = Method::PerfectCsi;
    uint64_t seed = 0;
    bool degraded = false;  // some beam fell back to the flagged default
};

/// Everything that is fixed for a sweep point and shared across trials:
/// geometry, training sequence, mask, angular grid, geometry factor tables.
struct ScenarioRuntime {
    ScenarioConfig cfg;
    double snr_db = 10.0;
    int m_cs = 16;  // pilot budget per station; AoA methods use m_cs/2 up + m_cs/2 down
    ApLayout ap;
    RoomSpec room;
    ZcSequence z;
    CVec z_quantized;  // the realizable station-side training sequence
    SpectralMask mask;
    AngularGrid grid;
    std::vector<GeometryFactorTable> fwd_tables;  // k -> k+1
    std::vector<GeometryFactorTable> bwd_tables;  // k+1 -> k
    double snr_linear = 10.0;
    double pilot_snr_linear = 10.0;  // +inf means noiseless pilots
};

ScenarioRuntime build_runtime(const ScenarioConfig& cfg, double snr_db, int m_pilots);

/// One full pilot + estimation + beamforming + MMSE evaluation trial for one
/// method. Deterministic given (runtime, method, trial_seed); method-specific
/// failures degrade to flagged default beams rather than aborting.
LinkReport run_trial(const ScenarioRuntime& rt, Method method, uint64_t trial_seed);

}  // namespace srlink
