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

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "klmtel/detail/numeric.hpp"
#include "klmtel/profile.hpp"
#include "klmtel/qubit.hpp"

namespace klmtel {

/// Squared overlap |<a|b>|^2 of two normalized qubit states.
inline double fidelity_sq(const QubitState& a, const QubitState& b) {
    return std::norm(std::conj(a.alpha) * b.alpha + std::conj(a.beta) * b.beta);
}

/// Closed-form protocol model for one choice of input state and ancilla
/// profile. Outcomes are labeled by the total photon count k observed on
/// the n+1 measured modes; k = 0 and k = n+1 are failures.
///
/// teleported_state: the heralded output qubit for a success outcome
/// 1 <= k <= n, namely (alpha f(k), beta f(k-1)) renormalized.
/// Throws std::out_of_range for failure outcomes and std::domain_error
/// when the heralding probability vanishes (degenerate outcome).
inline QubitState teleported_state(const QubitState& psi, const CoefficientProfile& profile, int k) {
    if (k < 1 || k > profile.n()) {
        throw std::out_of_range("teleported_state: k is a failure outcome, no teleported state exists");
    }
    const double fk = profile.f(k);
    const double fk1 = profile.f(k - 1);
    const double denom = std::norm(psi.alpha) * fk * fk + std::norm(psi.beta) * fk1 * fk1;
    if (!(denom > 0.0)) {
        throw std::domain_error("teleported_state: degenerate outcome with zero heralding probability");
    }
    const double inv = 1.0 / std::sqrt(denom);
    return QubitState(psi.alpha * fk * inv, psi.beta * fk1 * inv);
}

/// p_k = |alpha|^2 f(k)^2 + |beta|^2 f(k-1)^2 for 0 <= k <= n+1, with the
/// boundary convention f(-1) = f(n+1) = 0.
inline double outcome_probability(const QubitState& psi, const CoefficientProfile& profile, int k) {
    if (k < 0 || k > profile.n() + 1) {
        throw std::out_of_range("outcome_probability: k outside 0..n+1");
    }
    const double fk = profile.f_ext(k);
    const double fk1 = profile.f_ext(k - 1);
    return std::norm(psi.alpha) * fk * fk + std::norm(psi.beta) * fk1 * fk1;
}

/// Expected squared fidelity over the success outcomes,
/// sum_{k=1..n} (|alpha|^2 f(k) + |beta|^2 f(k-1))^2.
inline double success_probability(const QubitState& psi, const CoefficientProfile& profile) {
    const double x = std::norm(psi.alpha);
    const double y = std::norm(psi.beta);
    detail::NeumaierSum s;
    for (int k = 1; k <= profile.n(); ++k) {
        const double t = x * profile.f(k) + y * profile.f(k - 1);
        s.add(t * t);
    }
    return s.value();
}

/// The same success probability as a function of x = |alpha|^2 alone;
/// a quadratic in x. For palindromic profiles its minimum over [0,1]
/// sits at x = 1/2.
inline double success_probability_curve(const CoefficientProfile& profile, double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("success_probability_curve: x = |alpha|^2 must lie in [0,1]");
    }
    detail::NeumaierSum s;
    for (int k = 1; k <= profile.n(); ++k) {
        const double t = x * profile.f(k) + (1.0 - x) * profile.f(k - 1);
        s.add(t * t);
    }
    return s.value();
}

/// One row of the outcome table. state and fidelity_sq are present exactly
/// for heralded successes (1 <= k <= n with nonzero probability).
struct OutcomeReport {
    int k;
    double probability;
    std::optional<QubitState> state;
    std::optional<double> fidelity_sq;
};

/// All outcomes k = 0..n+1 for one input/profile pair. Probabilities sum
/// to 1 and sum_k p_k * F_k^2 over successes equals success_probability.
inline std::vector<OutcomeReport> full_outcome_table(const QubitState& psi, const CoefficientProfile& profile) {
    std::vector<OutcomeReport> table;
    table.reserve(static_cast<std::size_t>(profile.n()) + 2);
    for (int k = 0; k <= profile.n() + 1; ++k) {
        OutcomeReport row{k, outcome_probability(psi, profile, k), std::nullopt, std::nullopt};
        if (k >= 1 && k <= profile.n() && row.probability > 0.0) {
            const QubitState out = teleported_state(psi, profile, k);
            row.state = out;
            row.fidelity_sq = fidelity_sq(psi, out);
        }
        table.push_back(row);
    }
    return table;
}

}  // namespace klmtel
