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
#include <stdexcept>

namespace klmtel {

/// Normalized single-qubit amplitude pair: alpha|0> + beta|1>.
struct QubitState {
    std::complex<double> alpha;
    std::complex<double> beta;

    QubitState(std::complex<double> a, std::complex<double> b) : alpha(a), beta(b) {
        const double n2 = std::norm(alpha) + std::norm(beta);
        if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-12) {
            throw std::invalid_argument("QubitState: amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
        }
    }

    /// Rescales an arbitrary nonzero amplitude pair to unit norm.
    static QubitState normalized(std::complex<double> a, std::complex<double> b) {
        const double nrm = std::sqrt(std::norm(a) + std::norm(b));
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            throw std::invalid_argument("QubitState: cannot normalize a zero state");
        }
        return QubitState(a / nrm, b / nrm);
    }
};

inline QubitState plus_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return QubitState(r, r);
}

}  // namespace klmtel
