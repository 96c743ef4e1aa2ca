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

// Reference implementations. Kept deliberately plain; these are the ground
// truth the AVX2 variants are tested against.

#include "srlink/kernels.hpp"

namespace srlink::kernels {
namespace scalar_impl {

static void cmul(const cd* a, const cd* b, cd* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

static void abs2(const cd* x, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

static double sum_abs2(const cd* x, size_t n) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

static void axpy(cd alpha, const cd* x, cd* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

static void scale_real(double s, cd* x, size_t n) {
    for (size_t i = 0; i < n; ++i) x[i] *= s;
}

static cd dotu(const cd* x, const cd* y, size_t n) {
    cd s{0.0, 0.0};
    for (size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

static cd dotc(const cd* x, const cd* y, size_t n) {
    cd s{0.0, 0.0};
    for (size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

static void real_matvec(const double* a, const double* x, double* y, size_t rows, size_t cols) {
    for (size_t r = 0; r < rows; ++r) {
        const double* row = a + r * cols;
        double s = 0.0;
        for (size_t c = 0; c < cols; ++c) s += row[c] * x[c];
        y[r] = s;
    }
}

static void butterfly_rows(cd* lo, cd* hi, cd w, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        const cd t = w * hi[i];
        hi[i] = lo[i] - t;
        lo[i] += t;
    }
}

}  // namespace scalar_impl

const Ops& scalar_ops() {
    static const Ops table{
        scalar_impl::cmul,   scalar_impl::abs2, scalar_impl::sum_abs2,
        scalar_impl::axpy,   scalar_impl::scale_real,
        scalar_impl::dotu,   scalar_impl::dotc, scalar_impl::real_matvec,
        scalar_impl::butterfly_rows,
    };
    return table;
}

}  // namespace srlink::kernels
