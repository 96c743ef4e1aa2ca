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

#include "srlink/cmat.hpp"

namespace srlink {

// Unitary DFT conventions. U_N(a,b) = exp(-j 2 pi a b / N) / sqrt(N); the
// inverse transform is its conjugate. fft2_unitary computes U X U (forward)
// or conj(U) X conj(U) (inverse), which are the two-sided transforms the
// beamspace representation is built on.

bool is_pow2(int n);

/// In-place unitary DFT of a vector. Radix-2 for power-of-two lengths,
/// dense evaluation otherwise.
void fft_unitary(CVec& v, bool inverse);

/// In-place two-sided unitary transform of a square matrix: X <- U X U
/// (or the conjugate pair when inverse). Power-of-two sizes take the fast
/// path; other sizes fall back to dense multiplication.
void fft2_unitary(CMat& x, bool inverse);

/// Dense unitary DFT matrix (exp(-j 2 pi a b / n)/sqrt(n), conjugated when
/// inverse). Used as the fallback path for non-power-of-two sizes.
CMat dft_matrix(int n, bool inverse);

}  // namespace srlink
