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

#include <utility>
#include <vector>

#include "srlink/channel.hpp"
#include "srlink/cmat.hpp"
#include "srlink/codebook.hpp"
#include "srlink/rng.hpp"

namespace srlink {

/// Random circulant-shift pilot schedule. c[m] is the station-side shift in
/// slot m (uniform with replacement); r[k][m] is the shift at subarray k,
/// drawn so that for each subarray the sampled coordinate pairs
/// (r[k][m], c[m]) never repeat. m == n^2 produces the deterministic full
/// sweep in which every pair appears exactly once.
struct ShiftSchedule {
    int n = 0;
    int m = 0;
    int n_rf = 0;
    std::vector<int> c;               // length m
    std::vector<std::vector<int>> r;  // n_rf x m
};

ShiftSchedule draw_schedule(int m, int n, int n_rf, Rng& rng);

struct MeasurementBatch {
    std::vector<CVec> y;  // per subarray, length m each
    double sigma2 = 0.0;
};

/// One channel measurement per subarray per slot:
/// y[k][m] = w[m][k]^T H_k f[m] + CN(0, sigma^2).
MeasurementBatch measure(const ChannelSet& channel, const std::vector<CVec>& f_slots,
                         const std::vector<std::vector<CVec>>& w_slots, double sigma, Rng& rng);

/// Station-side measurement of an effective receive vector h:
/// y[m] = probes(m,:) h + CN(0, sigma^2).
CVec measure_vector(const CVec& h, const CMat& probes, double sigma, Rng& rng);

/// Exact circulant-shift pilot beams for a schedule (the beams the masked
/// beamspace measurement model is written for).
std::pair<std::vector<CVec>, std::vector<std::vector<CVec>>> cs_pilot_beams(
    const ShiftSchedule& schedule, const ZcSequence& z);

/// Partial-2D-DFT sampling operator for one subarray: row m of the implied
/// M x N^2 matrix picks the (r[m], c[m]) sample of U S U. Forward and adjoint
/// both run through the FFT.
class CsOperator {
  public:
    CsOperator(const ShiftSchedule& schedule, int k);

    CVec forward(const CMat& s) const;
    CMat adjoint(const CVec& y) const;

    int n() const { return n_; }
    int m() const { return static_cast<int>(r_.size()); }
    const std::vector<int>& rows() const { return r_; }
    const std::vector<int>& cols() const { return c_; }

  private:
    int n_ = 0;
    std::vector<int> r_, c_;
};

/// AoA probe matrix: the first m_ap - 1 rows are distinct circulant shifts of
/// z (q-bit quantized when q_bits > 0), and the last row is the first row
/// with the sign of entries 2..N flipped, which exposes the unknown common
/// gain: y[0] + y[m_ap-1] is a noisy 2 * alpha * psi(0,0).
CMat aoa_probe_schedule(int m_ap, int n, const ZcSequence& z, Rng& rng, int q_bits = -1);

struct GainCompensation {
    cd alpha_hat{0.0, 0.0};
    CVec y_tilde;
    bool degraded = false;  // |alpha_hat|^2 below the floor; fall back to a uniform belief
};

GainCompensation gain_compensate(const CVec& y, cd w_first, double floor_coef = 1e-6);

/// Mean noiseless measurement power over a pilot slot set; the per-scenario
/// noise variance is this divided by the configured linear SNR.
double mean_signal_power(const ChannelSet& channel, const std::vector<CVec>& f_slots,
                         const std::vector<std::vector<CVec>>& w_slots);

double mean_signal_power_vec(const CVec& h, const CMat& probes);

/// Text schedule dump for cross-checking: header with n, n_rf, m, then one
/// line per slot with "m c r_1 ... r_nrf".
void dump_schedule(const ShiftSchedule& schedule, const std::string& path);
ShiftSchedule load_schedule(const std::string& path);

}  // namespace srlink
