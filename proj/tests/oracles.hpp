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

// Test-only reference implementations. These stay independent of the
// library code paths they are used to check: the permanent by the plain
// factorial sum over permutations, eigenvalues by dense cyclic Jacobi.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "klmtel/tridiag.hpp"

namespace oracles {

/// Permanent as the literal sum over all permutations, O(n! n).
inline std::complex<double> naive_permanent(const std::vector<std::complex<double>>& a, int dim) {
    if (dim == 0) {
        return {1.0, 0.0};
    }
    std::vector<int> perm(static_cast<std::size_t>(dim));
    std::iota(perm.begin(), perm.end(), 0);
    std::complex<double> total{0.0, 0.0};
    do {
        std::complex<double> prod{1.0, 0.0};
        for (int i = 0; i < dim; ++i) {
            prod *= a[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) +
                      static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        }
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += m[p][q] * m[p][q];
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (m[p][q] == 0.0) {
                    continue;
                }
                const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double mip = m[i][p];
                    const double miq = m[i][q];
                    m[i][p] = c * mip - s * miq;
                    m[i][q] = s * mip + c * miq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double mpi = m[p][i];
                    const double mqi = m[q][i];
                    m[p][i] = c * mpi - s * mqi;
                    m[q][i] = s * mpi + c * mqi;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) {
        ev[i] = m[i][i];
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

inline std::vector<std::vector<double>> densify(const klmtel::SymTridiagonal& t) {
    const std::size_t n = t.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = t.diag()[i];
        if (i + 1 < n) {
            m[i][i + 1] = m[i + 1][i] = t.offdiag()[i];
        }
    }
    return m;
}

}  // namespace oracles
