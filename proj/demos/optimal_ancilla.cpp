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

// Prints the optimal ancilla coefficients for small n and how much the
// optimized success probability gains over the flat KLM baseline.

#include <cstdio>

#include "klmtel/analytic.hpp"
#include "klmtel/profile.hpp"
#include "klmtel/tridiag.hpp"

int main() {
    for (int n = 1; n <= 8; ++n) {
        const klmtel::CoefficientProfile best = klmtel::optimal_profile(n);
        const double lambda = klmtel::success_probability(klmtel::plus_state(), best);
        const double baseline = static_cast<double>(n) / (n + 1);
        std::printf("n=%d  lambda=%.8f  baseline=%.8f  gain=%.8f\n", n, lambda, baseline, lambda - baseline);
        std::printf("  f =");
        for (int i = 0; i <= n; ++i) {
            std::printf(" %.6f", best.f(i));
        }
        std::printf("\n");
    }
    return 0;
}
