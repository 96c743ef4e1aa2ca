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

// AVX2/FMA variants. One 256-bit lane holds two complex doubles in
// interleaved (re, im) layout. This translation unit is the only one built
// with -mavx2 -mfma; it must not be entered unless avx2_supported().

#include "srlink/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define SRLINK_X86 1
#endif

#ifdef SRLINK_X86
#include <immintrin.h>

namespace srlink::kernels {
namespace avx2_impl {

// (ar, ai, br, bi) * (cr, ci, dr, di) complex-elementwise.
static inline __m256d cmul2(__m256d a, __m256d b) {
    const __m256d a_re = _mm256_movedup_pd(a);             // ar ar br br
    const __m256d a_im = _mm256_permute_pd(a, 0xF);        // ai ai bi bi
    const __m256d b_sw = _mm256_permute_pd(b, 0x5);        // ci cr di dr
    return _mm256_addsub_pd(_mm256_mul_pd(a_re, b),        // even: ar*cr - ai*ci
                            _mm256_mul_pd(a_im, b_sw));    // odd:  ar*ci + ai*cr
}

static void cmul(const cd* a, const cd* b, cd* out, size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(po + 2 * i, cmul2(va, vb));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

static void abs2(const cd* x, double* out, size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(px + 2 * i);
        const __m256d sq = _mm256_mul_pd(v, v);
        const __m256d h = _mm256_hadd_pd(sq, sq);  // [s0 s0 s1 s1]
        out[i] = _mm256_cvtsd_f64(h);
        out[i + 1] = _mm_cvtsd_f64(_mm256_extractf128_pd(h, 1));
    }
    for (; i < n; ++i) out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

static double sum_abs2(const cd* x, size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(px + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d s2 = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
    for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

static void axpy(cd alpha, const cd* x, cd* y, size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const __m256d a_re = _mm256_set1_pd(alpha.real());
    const __m256d a_im = _mm256_set1_pd(alpha.imag());
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        const __m256d x_sw = _mm256_permute_pd(vx, 0x5);
        const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(a_re, vx), _mm256_mul_pd(a_im, x_sw));
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), prod));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

static void scale_real(double s, cd* x, size_t n) {
    double* px = reinterpret_cast<double*>(x);
    const __m256d vs = _mm256_set1_pd(s);
    size_t i = 0;
    for (; i + 2 <= n; i += 2)
        _mm256_storeu_pd(px + 2 * i, _mm256_mul_pd(vs, _mm256_loadu_pd(px + 2 * i)));
    for (; i < n; ++i) x[i] *= s;
}

static inline cd reduce_c(__m256d acc) {
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double buf[2];
    _mm_store_pd(buf, s);
    return {buf[0], buf[1]};
}

static cd dotu(const cd* x, const cd* y, size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    const double* py = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        const __m256d vy = _mm256_loadu_pd(py + 2 * i);
        acc = _mm256_add_pd(acc, cmul2(vx, vy));
    }
    cd s = reduce_c(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

static cd dotc(const cd* x, const cd* y, size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    const double* py = reinterpret_cast<const double*>(y);
    const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_xor_pd(_mm256_loadu_pd(px + 2 * i), conj_mask);
        const __m256d vy = _mm256_loadu_pd(py + 2 * i);
        acc = _mm256_add_pd(acc, cmul2(vx, vy));
    }
    cd s = reduce_c(acc);
    for (; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

static void real_matvec(const double* a, const double* x, double* y, size_t rows, size_t cols) {
    for (size_t r = 0; r < rows; ++r) {
        const double* row = a + r * cols;
        __m256d acc = _mm256_setzero_pd();
        size_t c = 0;
        for (; c + 4 <= cols; c += 4)
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + c), _mm256_loadu_pd(x + c), acc);
        const __m128d lo = _mm256_castpd256_pd128(acc);
        const __m128d hi = _mm256_extractf128_pd(acc, 1);
        const __m128d s2 = _mm_add_pd(lo, hi);
        double s = _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
        for (; c < cols; ++c) s += row[c] * x[c];
        y[r] = s;
    }
}

static void butterfly_rows(cd* lo, cd* hi, cd w, size_t n) {
    double* plo = reinterpret_cast<double*>(lo);
    double* phi = reinterpret_cast<double*>(hi);
    const __m256d w_re = _mm256_set1_pd(w.real());
    const __m256d w_im = _mm256_set1_pd(w.imag());
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vh = _mm256_loadu_pd(phi + 2 * i);
        const __m256d h_sw = _mm256_permute_pd(vh, 0x5);
        const __m256d t = _mm256_addsub_pd(_mm256_mul_pd(w_re, vh), _mm256_mul_pd(w_im, h_sw));
        const __m256d vl = _mm256_loadu_pd(plo + 2 * i);
        _mm256_storeu_pd(phi + 2 * i, _mm256_sub_pd(vl, t));
        _mm256_storeu_pd(plo + 2 * i, _mm256_add_pd(vl, t));
    }
    for (; i < n; ++i) {
        const cd t = w * hi[i];
        hi[i] = lo[i] - t;
        lo[i] += t;
    }
}

}  // namespace avx2_impl

const Ops& avx2_ops() {
    static const Ops table{
        avx2_impl::cmul,   avx2_impl::abs2, avx2_impl::sum_abs2,
        avx2_impl::axpy,   avx2_impl::scale_real,
        avx2_impl::dotu,   avx2_impl::dotc, avx2_impl::real_matvec,
        avx2_impl::butterfly_rows,
    };
    return table;
}

}  // namespace srlink::kernels

#else  // non-x86 fallback: the AVX2 table aliases the scalar one.

namespace srlink::kernels {
const Ops& avx2_ops() { return scalar_ops(); }
}  // namespace srlink::kernels

#endif
