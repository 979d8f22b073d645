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
#include <stdexcept>
#include <utility>
#include <vector>

#include "klmtel/detail/numeric.hpp"
#include "klmtel/tridiag.hpp"

namespace klmtel {

/// Ancilla coefficient vector (f(0), ..., f(n)), normalized so that
/// sum f(i)^2 = 1. n is the number of coefficient steps; the protocol
/// consumes 2n ancilla modes.
class CoefficientProfile {
  public:
    /// Requires an already-normalized vector of length n+1 >= 2.
    explicit CoefficientProfile(std::vector<double> f) : f_(std::move(f)) {
        if (f_.size() < 2) {
            throw std::invalid_argument("CoefficientProfile: need n >= 1, i.e. at least two coefficients");
        }
        detail::NeumaierSum s;
        for (double x : f_) {
            if (!std::isfinite(x)) {
                throw std::invalid_argument("CoefficientProfile: coefficients must be finite");
            }
            s.add(x * x);
        }
        if (std::abs(s.value() - 1.0) > 1e-12) {
            throw std::invalid_argument("CoefficientProfile: coefficients must satisfy sum f(i)^2 = 1");
        }
    }

    /// Rescales an arbitrary nonzero vector to unit sum of squares.
    static CoefficientProfile normalized(std::vector<double> raw) {
        detail::NeumaierSum s;
        for (double x : raw) {
            s.add(x * x);
        }
        const double nrm = std::sqrt(s.value());
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            throw std::invalid_argument("CoefficientProfile: cannot normalize a zero vector");
        }
        for (double& x : raw) {
            x /= nrm;
        }
        return CoefficientProfile(std::move(raw));
    }

    int n() const {
        return static_cast<int>(f_.size()) - 1;
    }

    double f(int i) const {
        if (i < 0 || i > n()) {
            throw std::out_of_range("CoefficientProfile: index outside 0..n");
        }
        return f_[static_cast<std::size_t>(i)];
    }

    /// Boundary convention f(-1) = f(n+1) = 0, used by the outcome
    /// probability formula at the failure outcomes.
    double f_ext(int i) const {
        if (i < 0 || i > n()) {
            return 0.0;
        }
        return f_[static_cast<std::size_t>(i)];
    }

    const std::vector<double>& coefficients() const {
        return f_;
    }

  private:
    std::vector<double> f_;
};

/// The flat profile f(i) = 1/sqrt(n+1) of the original KLM scheme.
inline CoefficientProfile uniform_profile(int n) {
    if (n < 1) {
        throw std::invalid_argument("uniform_profile: n must be >= 1");
    }
    const double v = 1.0 / std::sqrt(static_cast<double>(n) + 1.0);
    return CoefficientProfile(std::vector<double>(static_cast<std::size_t>(n) + 1, v));
}

/// Perron eigenvector of build_matrix_a(n): the coefficient profile that
/// maximizes the expected squared fidelity. All entries are strictly
/// positive and the vector is palindromic, f(i) = f(n-i).
inline CoefficientProfile optimal_profile(int n, double tol = 1e-12) {
    EigenPair p = largest_eigenpair(build_matrix_a(n), tol);
    for (double x : p.vector) {
        if (!(x > 0.0)) {
            throw std::runtime_error("optimal_profile: eigenvector not strictly positive (solver defect)");
        }
    }
    return CoefficientProfile(std::move(p.vector));
}

}  // namespace klmtel
