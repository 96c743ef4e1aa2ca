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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace srlink {

using cd = std::complex<double>;
using CVec = std::vector<cd>;

/// Dense row-major complex matrix. Small and value-semantic; all the heavy
/// per-element work goes through the kernels module.
struct CMat {
    int rows = 0;
    int cols = 0;
    std::vector<cd> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    cd& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const cd& operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    cd* row(int r) { return a.data() + static_cast<size_t>(r) * cols; }
    const cd* row(int r) const { return a.data() + static_cast<size_t>(r) * cols; }

    size_t size() const { return a.size(); }
    cd* data() { return a.data(); }
    const cd* data() const { return a.data(); }
};

/// Dense row-major real matrix.
struct RMat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    RMat() = default;
    RMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    double& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const double& operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    double* row(int r) { return a.data() + static_cast<size_t>(r) * cols; }
    const double* row(int r) const { return a.data() + static_cast<size_t>(r) * cols; }

    size_t size() const { return a.size(); }
    double* data() { return a.data(); }
    const double* data() const { return a.data(); }
};

inline CMat transpose(const CMat& m) {
    CMat t(m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) t(c, r) = m(r, c);
    return t;
}

inline CMat block_rows(const CMat& m, int first_row, int n_rows) {
    if (first_row < 0 || first_row + n_rows > m.rows)
        throw std::invalid_argument("block_rows: range out of bounds");
    CMat b(n_rows, m.cols);
    for (int r = 0; r < n_rows; ++r)
        for (int c = 0; c < m.cols; ++c) b(r, c) = m(first_row + r, c);
    return b;
}

}  // namespace srlink
