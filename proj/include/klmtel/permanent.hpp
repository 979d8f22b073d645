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

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace klmtel {

/// Permanent of a dim x dim complex matrix (row-major), by Ryser's
/// inclusion-exclusion formula with Gray-code column-subset updates,
/// O(2^dim * dim). The 0x0 permanent is 1.
inline std::complex<double> permanent(const std::vector<std::complex<double>>& a, int dim) {
    if (dim < 0 || static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim) != a.size()) {
        throw std::invalid_argument("permanent: matrix must be dim x dim");
    }
    if (dim > 30) {
        throw std::invalid_argument("permanent: dimension too large for exhaustive evaluation");
    }
    if (dim == 0) {
        return {1.0, 0.0};
    }
    const std::size_t n = static_cast<std::size_t>(dim);
    std::vector<std::complex<double>> rowsum(n, {0.0, 0.0});
    std::complex<double> total{0.0, 0.0};
    const std::uint32_t end = 1u << n;
    std::uint32_t gray_prev = 0;
    for (std::uint32_t k = 1; k < end; ++k) {
        const std::uint32_t gray = k ^ (k >> 1);
        const std::uint32_t diff = gray ^ gray_prev;
        const int j = std::countr_zero(diff);
        if (gray & diff) {
            for (std::size_t i = 0; i < n; ++i) {
                rowsum[i] += a[i * n + static_cast<std::size_t>(j)];
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                rowsum[i] -= a[i * n + static_cast<std::size_t>(j)];
            }
        }
        std::complex<double> prod{1.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            prod *= rowsum[i];
        }
        if (std::popcount(gray) % 2 == 0) {
            total += prod;
        } else {
            total -= prod;
        }
        gray_prev = gray;
    }
    return (dim % 2 == 0) ? total : -total;
}

}  // namespace klmtel
