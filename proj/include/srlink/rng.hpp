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

#include <cstdint>

#include "srlink/cmat.hpp"

namespace srlink {

/// Stateless splitmix64 step. Used both as the seeding mix and as the
/// counter-based stream splitter, so derived streams are reproducible across
/// builds and thread counts.
uint64_t splitmix64(uint64_t x);

/// Derives an independent stream seed from a base seed and up to three
/// identifiers (trial index, purpose tag, sub-index). The derivation is a
/// fixed splitmix64 chain; the same (base, ids) always yields the same seed.
uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0, uint64_t c = 0);

/// Deterministic xoshiro256++ generator with hand-rolled distributions.
/// The standard-library distributions are implementation-defined, which would
/// break byte-identical reproducibility of results, so everything needed here
/// is implemented explicitly.
class Rng {
  public:
    explicit Rng(uint64_t seed);

    uint64_t next_u64();

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform();

    double uniform(double lo, double hi);

    /// Uniform integer in [0, n). n must be positive.
    int uniform_int(int n);

    /// Standard normal via Box-Muller (second sample of each pair is cached).
    double gaussian();

    /// Circularly-symmetric complex Gaussian with the given total variance.
    cd cgaussian(double variance);

  private:
    uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace srlink
