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

#include "srlink/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "srlink/fft.hpp"
#include "srlink/kernels.hpp"

namespace srlink {

ShiftSchedule draw_schedule(int m, int n, int n_rf, Rng& rng) {
    if (n < 1 || n_rf < 1) throw std::invalid_argument("draw_schedule: bad dimensions");
    if (m < 1 || m > n * n)
        throw std::invalid_argument("draw_schedule: m must be in [1, n^2]");

    ShiftSchedule s;
    s.n = n;
    s.m = m;
    s.n_rf = n_rf;
    s.c.resize(m);
    s.r.assign(n_rf, std::vector<int>(m));

    if (m == n * n) {
        // full sweep: every (r, c) pair exactly once per subarray
        for (int j = 0; j < m; ++j) {
            s.c[j] = j % n;
            for (int k = 0; k < n_rf; ++k) s.r[k][j] = j / n;
        }
        return s;
    }

    std::vector<std::vector<bool>> used(n_rf, std::vector<bool>(static_cast<size_t>(n) * n, false));
    std::vector<int> free_r;
    for (int j = 0; j < m; ++j) {
        bool placed = false;
        for (int attempt = 0; attempt < 64 * n && !placed; ++attempt) {
            const int c = rng.uniform_int(n);
            // every subarray needs at least one fresh row for this column
            bool feasible = true;
            for (int k = 0; k < n_rf && feasible; ++k) {
                feasible = false;
                for (int r = 0; r < n; ++r)
                    if (!used[k][static_cast<size_t>(r) * n + c]) {
                        feasible = true;
                        break;
                    }
            }
            if (!feasible) continue;
            s.c[j] = c;
            for (int k = 0; k < n_rf; ++k) {
                free_r.clear();
                for (int r = 0; r < n; ++r)
                    if (!used[k][static_cast<size_t>(r) * n + c]) free_r.push_back(r);
                const int pick = free_r[rng.uniform_int(static_cast<int>(free_r.size()))];
                s.r[k][j] = pick;
                used[k][static_cast<size_t>(pick) * n + c] = true;
            }
            placed = true;
        }
        if (!placed)
            throw std::runtime_error("draw_schedule: could not find fresh coordinates (schedule nearly exhausted)");
    }
    return s;
}

MeasurementBatch measure(const ChannelSet& channel, const std::vector<CVec>& f_slots,
                         const std::vector<std::vector<CVec>>& w_slots, double sigma, Rng& rng) {
    const size_t m = f_slots.size();
    if (w_slots.size() != m) throw std::invalid_argument("measure: slot count mismatch");
    const int n_rf = channel.n_rf;
    const size_t n = static_cast<size_t>(channel.n);

    MeasurementBatch batch;
    batch.sigma2 = sigma * sigma;
    batch.y.assign(n_rf, CVec(m));

    CVec t(n);
    for (size_t slot = 0; slot < m; ++slot) {
        if (f_slots[slot].size() != n) throw std::invalid_argument("measure: bad f dimension");
        if (w_slots[slot].size() != static_cast<size_t>(n_rf))
            throw std::invalid_argument("measure: bad w slot");
        for (int k = 0; k < n_rf; ++k) {
            const CMat& hk = channel.subchannels[k];
            const CVec& w = w_slots[slot][k];
            if (w.size() != n) throw std::invalid_argument("measure: bad w dimension");
            for (size_t i = 0; i < n; ++i) t[i] = kernels::dotu(hk.row(static_cast<int>(i)), f_slots[slot].data(), n);
            cd y = kernels::dotu(w.data(), t.data(), n);
            if (sigma > 0.0) y += rng.cgaussian(sigma * sigma);
            batch.y[k][slot] = y;
        }
    }
    return batch;
}

CVec measure_vector(const CVec& h, const CMat& probes, double sigma, Rng& rng) {
    if (probes.cols != static_cast<int>(h.size()))
        throw std::invalid_argument("measure_vector: dimension mismatch");
    CVec y(probes.rows);
    for (int m = 0; m < probes.rows; ++m) {
        y[m] = kernels::dotu(probes.row(m), h.data(), h.size());
        if (sigma > 0.0) y[m] += rng.cgaussian(sigma * sigma);
    }
    return y;
}

std::pair<std::vector<CVec>, std::vector<std::vector<CVec>>> cs_pilot_beams(
    const ShiftSchedule& schedule, const ZcSequence& z) {
    if (z.n != schedule.n) throw std::invalid_argument("cs_pilot_beams: sequence length mismatch");
    // cache the n possible shifts once
    std::vector<CVec> shifts(schedule.n);
    for (int s = 0; s < schedule.n; ++s) shifts[s] = circulant_shift(z.z, s);

    std::vector<CVec> f(schedule.m);
    std::vector<std::vector<CVec>> w(schedule.m, std::vector<CVec>(schedule.n_rf));
    for (int m = 0; m < schedule.m; ++m) {
        f[m] = shifts[schedule.c[m]];
        for (int k = 0; k < schedule.n_rf; ++k) w[m][k] = shifts[schedule.r[k][m]];
    }
    return {std::move(f), std::move(w)};
}

CsOperator::CsOperator(const ShiftSchedule& schedule, int k) : n_(schedule.n) {
    if (k < 0 || k >= schedule.n_rf) throw std::invalid_argument("CsOperator: bad subarray index");
    r_ = schedule.r[k];
    c_ = schedule.c;
}

CVec CsOperator::forward(const CMat& s) const {
    if (s.rows != n_ || s.cols != n_) throw std::invalid_argument("CsOperator::forward: bad size");
    CMat t = s;
    fft2_unitary(t, false);
    CVec y(r_.size());
    for (size_t i = 0; i < r_.size(); ++i) y[i] = t(r_[i], c_[i]);
    return y;
}

CMat CsOperator::adjoint(const CVec& y) const {
    if (y.size() != r_.size()) throw std::invalid_argument("CsOperator::adjoint: bad size");
    CMat z(n_, n_);
    for (size_t i = 0; i < r_.size(); ++i) z(r_[i], c_[i]) += y[i];
    fft2_unitary(z, true);
    return z;
}

CMat aoa_probe_schedule(int m_ap, int n, const ZcSequence& z, Rng& rng, int q_bits) {
    if (m_ap < 2) throw std::invalid_argument("aoa_probe_schedule: need at least 2 probes");
    if (m_ap - 1 > n)
        throw std::invalid_argument("aoa_probe_schedule: not enough distinct shifts");
    if (z.n != n) throw std::invalid_argument("aoa_probe_schedule: sequence length mismatch");

    // partial Fisher-Yates for m_ap - 1 distinct shift indices
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < m_ap - 1; ++i) std::swap(idx[i], idx[i + rng.uniform_int(n - i)]);

    CMat psi(m_ap, n);
    for (int m = 0; m < m_ap - 1; ++m) {
        CVec row = circulant_shift(z.z, idx[m]);
        if (q_bits > 0) row = phase_quantize(row, q_bits);
        std::copy(row.begin(), row.end(), psi.row(m));
    }
    for (int j = 0; j < n; ++j) psi(m_ap - 1, j) = (j == 0 ? psi(0, j) : -psi(0, j));
    return psi;
}

GainCompensation gain_compensate(const CVec& y, cd w_first, double floor_coef) {
    if (y.size() < 2) throw std::invalid_argument("gain_compensate: need at least 2 measurements");
    if (w_first == cd{0.0, 0.0}) throw std::invalid_argument("gain_compensate: w_first must be nonzero");

    GainCompensation g;
    g.alpha_hat = (y.front() + y.back()) / (2.0 * w_first);
    const double mean_pow = kernels::sum_abs2(y.data(), y.size()) / static_cast<double>(y.size());
    if (std::norm(g.alpha_hat) < floor_coef * mean_pow) {
        g.degraded = true;
        g.y_tilde = y;
        return g;
    }
    g.y_tilde.resize(y.size());
    for (size_t i = 0; i < y.size(); ++i) g.y_tilde[i] = y[i] / g.alpha_hat;
    return g;
}

double mean_signal_power(const ChannelSet& channel, const std::vector<CVec>& f_slots,
                         const std::vector<std::vector<CVec>>& w_slots) {
    Rng dummy(0);
    const MeasurementBatch clean = measure(channel, f_slots, w_slots, 0.0, dummy);
    double acc = 0.0;
    size_t count = 0;
    for (const CVec& yk : clean.y) {
        acc += kernels::sum_abs2(yk.data(), yk.size());
        count += yk.size();
    }
    if (count == 0) throw std::invalid_argument("mean_signal_power: empty slot set");
    return acc / static_cast<double>(count);
}

double mean_signal_power_vec(const CVec& h, const CMat& probes) {
    Rng dummy(0);
    const CVec clean = measure_vector(h, probes, 0.0, dummy);
    return kernels::sum_abs2(clean.data(), clean.size()) / static_cast<double>(clean.size());
}

void dump_schedule(const ShiftSchedule& schedule, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("dump_schedule: cannot open '" + path + "'");
    out << "srlink-schedule v1\n";
    out << schedule.n << " " << schedule.n_rf << " " << schedule.m << "\n";
    for (int m = 0; m < schedule.m; ++m) {
        out << m << " " << schedule.c[m];
        for (int k = 0; k < schedule.n_rf; ++k) out << " " << schedule.r[k][m];
        out << "\n";
    }
}

ShiftSchedule load_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_schedule: cannot open '" + path + "'");
    std::string magic, version;
    in >> magic >> version;
    if (magic != "srlink-schedule" || version != "v1")
        throw std::runtime_error("load_schedule: bad header in '" + path + "'");
    ShiftSchedule s;
    in >> s.n >> s.n_rf >> s.m;
    if (!in || s.n < 1 || s.n_rf < 1 || s.m < 1) throw std::runtime_error("load_schedule: bad dimensions");
    s.c.resize(s.m);
    s.r.assign(s.n_rf, std::vector<int>(s.m));
    for (int m = 0; m < s.m; ++m) {
        int idx;
        in >> idx >> s.c[m];
        for (int k = 0; k < s.n_rf; ++k) in >> s.r[k][m];
        if (!in) throw std::runtime_error("load_schedule: truncated data");
    }
    return s;
}

}  // namespace srlink
