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

#include <vector>

#include "srlink/cmat.hpp"

namespace srlink {

/// Unit-norm Zadoff-Chu sequence. Constant amplitude 1/sqrt(n) and, for any
/// root co-prime with n, a unimodular DFT (the CAZAC pair of properties).
struct ZcSequence {
    CVec z;
    int root = 0;
    int n = 0;
};

/// The 2^q-point phase alphabet realizable by q-bit phase shifters, scaled to
/// per-element magnitude 1/sqrt(n).
struct PhaseAlphabet {
    int q = 0;
    int n = 0;
    CVec entries;  // e^{j 2 pi l / 2^q} / sqrt(n), l = 0 .. 2^q - 1
};

/// Diagonal spectral mask built from the scaled DFT of a ZC sequence. The
/// mask entries are unimodular, so masking is perfectly conditioned and
/// preserves magnitudes (and therefore sparsity patterns) entrywise.
struct SpectralMask {
    CVec diag;      // sqrt(n) * DFT(z), |diag| = 1
    CMat weight;    // outer product diag diag^T, applied entrywise
    CMat inv_weight;
    int n = 0;
};

ZcSequence zc_sequence(int n, int t);

/// Circulant delay: out[i] = v[(i - shift) mod n]. shift is reduced mod n, so
/// shift = 0 and shift = n are both the identity.
CVec circulant_shift(const CVec& v, int shift);

SpectralMask spectral_mask(const ZcSequence& z);

CMat mask_apply(const SpectralMask& m, const CMat& x);    // Lambda X Lambda
CMat mask_invert(const SpectralMask& m, const CMat& s);   // Lambda^{-1} S Lambda^{-1}

PhaseAlphabet phase_alphabet(int q, int n);

/// Maps each entry to the alphabet member with the nearest phase; magnitudes
/// become 1/sqrt(n). Ties round toward the smaller phase index and zeros map
/// to index 0.
CVec phase_quantize(const CVec& v, int q);

/// Largest phase distance (radians) between any entry of v and the q-bit
/// alphabet. Zero means v is exactly realizable up to per-element magnitude.
double alphabet_phase_deviation(const CVec& v, int q);

/// Beam training vector actually applied to a phased array: the q-bit
/// quantized circulant shift of z. Always lies in the alphabet.
CVec training_vector(const ZcSequence& z, int shift, int q);

}  // namespace srlink
