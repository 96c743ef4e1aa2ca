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

#include "srlink/fft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "srlink/kernels.hpp"

namespace srlink {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

CMat dft_matrix(int n, bool inverse) {
    CMat u(n, n);
    const double sign = inverse ? 1.0 : -1.0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            // reduce a*b mod n before the trig call to keep the argument small
            const double ang = sign * 2.0 * M_PI * static_cast<double>((a * b) % n) / n;
            u(a, b) = scale * cd{std::cos(ang), std::sin(ang)};
        }
    return u;
}

namespace {

// Radix-2 DIT along the row dimension: every column of the n x m row-major
// block is transformed at once, so the butterfly kernel runs over contiguous
// rows and vectorizes.
void fft_cols(cd* data, int n, int m, bool inverse) {
    // bit-reversal permutation of rows
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap_ranges(data + static_cast<size_t>(i) * m,
                                    data + static_cast<size_t>(i + 1) * m,
                                    data + static_cast<size_t>(j) * m);
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (int len = 2; len <= n; len <<= 1) {
        const int half = len / 2;
        for (int j = 0; j < half; ++j) {
            const double ang = sign * 2.0 * M_PI * j / len;
            const cd w{std::cos(ang), std::sin(ang)};
            for (int i = 0; i < n; i += len) {
                kernels::butterfly_rows(data + static_cast<size_t>(i + j) * m,
                                        data + static_cast<size_t>(i + j + half) * m, w, m);
            }
        }
    }
}

CMat dense_two_sided(const CMat& x, bool inverse) {
    const CMat u = dft_matrix(x.rows, inverse);
    CMat t(x.rows, x.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int c = 0; c < x.cols; ++c) {
            cd s{0, 0};
            for (int k = 0; k < x.rows; ++k) s += u(r, k) * x(k, c);
            t(r, c) = s;
        }
    CMat out(x.rows, x.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int c = 0; c < x.cols; ++c) {
            cd s{0, 0};
            for (int k = 0; k < x.cols; ++k) s += t(r, k) * u(k, c);
            out(r, c) = s;
        }
    return out;
}

}  // namespace

void fft_unitary(CVec& v, bool inverse) {
    const int n = static_cast<int>(v.size());
    if (n == 0) return;
    if (is_pow2(n)) {
        fft_cols(v.data(), n, 1, inverse);
        kernels::scale_real(1.0 / std::sqrt(static_cast<double>(n)), v.data(), v.size());
        return;
    }
    const CMat u = dft_matrix(n, inverse);
    CVec out(n, cd{0, 0});
    for (int a = 0; a < n; ++a) out[a] = kernels::dotu(u.row(a), v.data(), n);
    v = std::move(out);
}

void fft2_unitary(CMat& x, bool inverse) {
    if (x.rows != x.cols) throw std::invalid_argument("fft2_unitary: matrix must be square");
    const int n = x.rows;
    if (n == 0) return;
    if (!is_pow2(n)) {
        x = dense_two_sided(x, inverse);
        return;
    }
    // U X U = transpose(U transpose(U X)); both passes run down columns.
    fft_cols(x.data(), n, n, inverse);
    x = transpose(x);
    fft_cols(x.data(), n, n, inverse);
    x = transpose(x);
    kernels::scale_real(1.0 / n, x.data(), x.size());
}

}  // namespace srlink
