// Copyright 2026 The klmtel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "klmtel/profile.hpp"
#include "klmtel/qubit.hpp"

namespace klmtel {

// Reproducible sampling: mt19937_64 with explicit bit-to-double conversion.
// std::uniform_real_distribution is implementation-defined, so seeded runs
// would not be byte-identical across standard libraries.

using Rng = std::mt19937_64;

/// Uniform double in [0, 1), 53 mantissa bits.
inline double unit_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1); safe under log().
inline double unit_double_open(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal via Box-Muller.
inline double standard_normal(Rng& rng) {
    const double r = std::sqrt(-2.0 * std::log(unit_double_open(rng)));
    return r * std::cos(2.0 * std::numbers::pi * unit_double(rng));
}

/// Random input qubit: |alpha|^2 uniform in [0,1], relative phase uniform
/// in [0, 2pi), alpha real non-negative.
inline QubitState sample_qubit(Rng& rng) {
    const double x = unit_double(rng);
    const double phase = 2.0 * std::numbers::pi * unit_double(rng);
    return QubitState(std::sqrt(x), std::polar(std::sqrt(1.0 - x), phase));
}

/// Random unit coefficient vector of length n+1 (Gaussian direction).
inline CoefficientProfile sample_profile(Rng& rng, int n) {
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    for (double& x : v) {
        x = standard_normal(rng);
    }
    return CoefficientProfile::normalized(std::move(v));
}

}  // namespace klmtel
