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

struct SingularTriplet {
    double sigma = 0.0;
    CVec u;  // left singular vector
    CVec v;  // right singular vector
};

/// Top singular triplet from a deterministic dense decomposition.
SingularTriplet top_singular_triplet(const CMat& m);

/// Spectral norm (largest singular value).
double spectral_norm(const CMat& m);

double frobenius_norm(const CMat& m);

/// Diagonal of (M^H M + I/snr)^{-1} for a square complex matrix.
std::vector<double> regularized_gram_inverse_diag(const CMat& m, double snr);

}  // namespace srlink
