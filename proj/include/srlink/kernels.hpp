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

#include <cstddef>

#include "srlink/cmat.hpp"

namespace srlink::kernels {

// Data-parallel inner loops used by the estimators and the channel pipeline.
// Each kernel has a scalar reference implementation and an AVX2 variant; the
// top-level entry points dispatch once at startup based on the host CPU.
// The two implementations are equivalence-tested against each other.

struct Ops {
    void (*cmul)(const cd* a, const cd* b, cd* out, size_t n);
    void (*abs2)(const cd* x, double* out, size_t n);
    double (*sum_abs2)(const cd* x, size_t n);
    void (*axpy)(cd alpha, const cd* x, cd* y, size_t n);
    void (*scale_real)(double s, cd* x, size_t n);
    cd (*dotu)(const cd* x, const cd* y, size_t n);
    cd (*dotc)(const cd* x, const cd* y, size_t n);
    void (*real_matvec)(const double* a, const double* x, double* y, size_t rows, size_t cols);
    void (*butterfly_rows)(cd* lo, cd* hi, cd w, size_t n);
};

bool avx2_supported();

const Ops& scalar_ops();
const Ops& avx2_ops();  // only valid to call through when avx2_supported()
const Ops& ops();       // dispatched

// Convenience wrappers over the dispatched table.

inline void cmul(const cd* a, const cd* b, cd* out, size_t n) { ops().cmul(a, b, out, n); }
inline void abs2(const cd* x, double* out, size_t n) { ops().abs2(x, out, n); }
inline double sum_abs2(const cd* x, size_t n) { return ops().sum_abs2(x, n); }
inline void axpy(cd alpha, const cd* x, cd* y, size_t n) { ops().axpy(alpha, x, y, n); }
inline void scale_real(double s, cd* x, size_t n) { ops().scale_real(s, x, n); }
inline cd dotu(const cd* x, const cd* y, size_t n) { return ops().dotu(x, y, n); }
inline cd dotc(const cd* x, const cd* y, size_t n) { return ops().dotc(x, y, n); }
inline void real_matvec(const double* a, const double* x, double* y, size_t rows, size_t cols) {
    ops().real_matvec(a, x, y, rows, cols);
}
inline void butterfly_rows(cd* lo, cd* hi, cd w, size_t n) { ops().butterfly_rows(lo, hi, w, n); }

}  // namespace srlink::kernels
