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

#include "srlink/codebook.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "srlink/fft.hpp"

namespace srlink {

ZcSequence zc_sequence(int n, int t) {
    if (n < 1) throw std::invalid_argument("zc_sequence: n must be positive");
    if (std::gcd(n, t) != 1)
        throw std::invalid_argument("zc_sequence: root must be co-prime with n");

    ZcSequence zc;
    zc.n = n;
    zc.root = t;
    zc.z.resize(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k) {
        // phase in units of pi/n, reduced mod 2n before the trig call
        const long long num = (n % 2 == 0) ? static_cast<long long>(t) * k * k
                                           : static_cast<long long>(t) * k * (k + 1);
        const double phase = M_PI * static_cast<double>(num % (2LL * n)) / n;
        zc.z[k] = scale * cd{std::cos(phase), std::sin(phase)};
    }
    return zc;
}

CVec circulant_shift(const CVec& v, int shift) {
    const int n = static_cast<int>(v.size());
    if (n == 0) return v;
    const int s = ((shift % n) + n) % n;
    CVec out(n);
    for (int i = 0; i < n; ++i) out[i] = v[(i - s + n) % n];
    return out;
}

SpectralMask spectral_mask(const ZcSequence& z) {
    SpectralMask m;
    m.n = z.n;
    CVec f = z.z;
    fft_unitary(f, false);
    const double root_n = std::sqrt(static_cast<double>(z.n));
    m.diag.resize(z.n);
    for (int k = 0; k < z.n; ++k) {
        m.diag[k] = root_n * f[k];
        if (std::abs(std::abs(m.diag[k]) - 1.0) > 1e-6)
            throw std::invalid_argument("spectral_mask: DFT of the sequence is not unimodular");
    }
    m.weight = CMat(z.n, z.n);
    m.inv_weight = CMat(z.n, z.n);
    for (int a = 0; a < z.n; ++a)
        for (int b = 0; b < z.n; ++b) {
            const cd w = m.diag[a] * m.diag[b];
            m.weight(a, b) = w;
            m.inv_weight(a, b) = 1.0 / w;
        }
    return m;
}

CMat mask_apply(const SpectralMask& m, const CMat& x) {
    if (x.rows != m.n || x.cols != m.n) throw std::invalid_argument("mask_apply: size mismatch");
    CMat s(x.rows, x.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int c = 0; c < x.cols; ++c) s(r, c) = m.weight(r, c) * x(r, c);
    return s;
}

CMat mask_invert(const SpectralMask& m, const CMat& s) {
    if (s.rows != m.n || s.cols != m.n) throw std::invalid_argument("mask_invert: size mismatch");
    CMat x(s.rows, s.cols);
    for (int r = 0; r < s.rows; ++r)
        for (int c = 0; c < s.cols; ++c) x(r, c) = m.inv_weight(r, c) * s(r, c);
    return x;
}

PhaseAlphabet phase_alphabet(int q, int n) {
    if (q < 1) throw std::invalid_argument("phase_alphabet: q must be at least 1");
    PhaseAlphabet al;
    al.q = q;
    al.n = n;
    const int size = 1 << q;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    al.entries.resize(size);
    for (int l = 0; l < size; ++l) {
        const double ang = 2.0 * M_PI * l / size;
        al.entries[l] = scale * cd{std::cos(ang), std::sin(ang)};
    }
    return al;
}

namespace {

int nearest_phase_index(cd v, int q) {
    if (v == cd{0.0, 0.0}) return 0;
    const int size = 1 << q;
    double x = std::arg(v) * size / (2.0 * M_PI);  // in [-size/2, size/2]
    // nearest integer with exact ties toward the smaller index
    int idx = static_cast<int>(std::ceil(x - 0.5));
    idx %= size;
    if (idx < 0) idx += size;
    return idx;
}

}  // namespace

CVec phase_quantize(const CVec& v, int q) {
    const PhaseAlphabet al = phase_alphabet(q, static_cast<int>(v.size()));
    CVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = al.entries[nearest_phase_index(v[i], q)];
    return out;
}

double alphabet_phase_deviation(const CVec& v, int q) {
    const int size = 1 << q;
    double worst = 0.0;
    for (const cd& e : v) {
        if (e == cd{0.0, 0.0}) continue;
        const double x = std::arg(e) * size / (2.0 * M_PI);
        const double frac = std::abs(x - std::round(x));
        worst = std::max(worst, frac * 2.0 * M_PI / size);
    }
    return worst;
}

CVec training_vector(const ZcSequence& z, int shift, int q) {
    return phase_quantize(circulant_shift(z.z, shift), q);
}

}  // namespace srlink
