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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "klmtel/analytic.hpp"
#include "klmtel/profile.hpp"
#include "klmtel/qubit.hpp"
#include "klmtel/random.hpp"

using klmtel::CoefficientProfile;
using klmtel::fidelity_sq;
using klmtel::full_outcome_table;
using klmtel::optimal_profile;
using klmtel::outcome_probability;
using klmtel::plus_state;
using klmtel::QubitState;
using klmtel::Rng;
using klmtel::success_probability;
using klmtel::success_probability_curve;
using klmtel::teleported_state;
using klmtel::uniform_profile;

namespace {
const std::complex<double> kI{0.0, 1.0};
}

TEST_CASE("QubitState enforces and produces unit norm") {
    REQUIRE_THROWS_AS(QubitState(1.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(QubitState::normalized(0.0, 0.0), std::invalid_argument);
    const QubitState s = QubitState::normalized(3.0, 4.0 * kI);
    REQUIRE(std::abs(s.alpha - 0.6) < 1e-15);
    REQUIRE(std::abs(s.beta - 0.8 * kI) < 1e-15);
}

TEST_CASE("teleported state matches the closed form on the n=2 optimal profile") {
    const CoefficientProfile p = optimal_profile(2);
    const QubitState out = teleported_state(plus_state(), p, 1);
    // (alpha f(1), beta f(0)) ~ (2, 1)/sqrt(5)
    REQUIRE(std::abs(out.alpha - 2.0 / std::sqrt(5.0)) < 1e-10);
    REQUIRE(std::abs(out.beta - 1.0 / std::sqrt(5.0)) < 1e-10);

    SECTION("a |0> input is a fixed point") {
        const QubitState zero(1.0, 0.0);
        const QubitState t = teleported_state(zero, p, 2);
        REQUIRE(std::abs(t.alpha - 1.0) < 1e-15);
        REQUIRE(std::abs(t.beta) < 1e-15);
    }
    SECTION("the uniform profile teleports every state exactly") {
        Rng rng(7);
        for (int n = 1; n <= 5; ++n) {
            const CoefficientProfile u = uniform_profile(n);
            for (int trial = 0; trial < 5; ++trial) {
                const QubitState psi = klmtel::sample_qubit(rng);
                for (int k = 1; k <= n; ++k) {
                    REQUIRE(std::abs(fidelity_sq(psi, teleported_state(psi, u, k)) - 1.0) < 1e-12);
                }
            }
        }
    }
    SECTION("failure and degenerate outcomes are distinct errors") {
        REQUIRE_THROWS_AS(teleported_state(plus_state(), p, 0), std::out_of_range);
        REQUIRE_THROWS_AS(teleported_state(plus_state(), p, 3), std::out_of_range);
        const CoefficientProfile holed = CoefficientProfile::normalized({0.0, 1.0});
        const QubitState one(0.0, 1.0);
        REQUIRE_THROWS_AS(teleported_state(one, holed, 1), std::domain_error);
    }
}

TEST_CASE("outcome probabilities follow the quadratic form with zero boundary") {
    const CoefficientProfile p = optimal_profile(2);
    REQUIRE(std::abs(outcome_probability(plus_state(), p, 1) - 5.0 / 12.0) < 1e-12);
    REQUIRE(std::abs(outcome_probability(plus_state(), p, 0) - 1.0 / 12.0) < 1e-12);

    const QubitState zero(1.0, 0.0);
    REQUIRE(outcome_probability(zero, p, 3) == 0.0);

    for (int n = 1; n <= 6; ++n) {
        const CoefficientProfile u = uniform_profile(n);
        const QubitState psi = QubitState::normalized(0.3, std::complex<double>(0.1, -2.0));
        for (int k = 1; k <= n; ++k) {
            REQUIRE(std::abs(outcome_probability(psi, u, k) - 1.0 / (n + 1)) < 1e-12);
        }
    }

    REQUIRE_THROWS_AS(outcome_probability(plus_state(), p, -1), std::out_of_range);
    REQUIRE_THROWS_AS(outcome_probability(plus_state(), p, 4), std::out_of_range);
}

TEST_CASE("fidelity_sq is the squared overlap") {
    const CoefficientProfile p = optimal_profile(2);
    const QubitState out = teleported_state(plus_state(), p, 1);
    REQUIRE(std::abs(fidelity_sq(plus_state(), out) - 0.9) < 1e-12);
    REQUIRE(std::abs(fidelity_sq(out, out) - 1.0) < 1e-12);
    REQUIRE(fidelity_sq(QubitState(1.0, 0.0), QubitState(0.0, 1.0)) == 0.0);
}

TEST_CASE("success probability hits the known reference points") {
    REQUIRE(std::abs(success_probability(plus_state(), optimal_profile(2)) - 0.75) < 1e-12);
    for (int n = 1; n <= 50; ++n) {
        const double expect = static_cast<double>(n) / (n + 1);
        REQUIRE(std::abs(success_probability(plus_state(), uniform_profile(n)) - expect) < 1e-12);
    }
    const QubitState zero(1.0, 0.0);
    REQUIRE(std::abs(success_probability(zero, optimal_profile(2)) - 5.0 / 6.0) < 1e-12);
}

TEST_CASE("success probability curve is quadratic with minimum at 1/2 for palindromic profiles") {
    const CoefficientProfile p2 = optimal_profile(2);
    REQUIRE(std::abs(success_probability_curve(p2, 0.5) - 0.75) < 1e-12);
    REQUIRE(std::abs(success_probability_curve(p2, 0.0) - 5.0 / 6.0) < 1e-12);

    for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        REQUIRE(std::abs(success_probability_curve(uniform_profile(3), x) - 0.75) < 1e-12);
    }

    REQUIRE_THROWS_AS(success_probability_curve(p2, -0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(success_probability_curve(p2, 1.1), std::invalid_argument);

    SECTION("finite-difference derivative vanishes at 1/2") {
        const double h = 1e-6;
        for (int n = 1; n <= 12; ++n) {
            const CoefficientProfile p = optimal_profile(n);
            const double d = (success_probability_curve(p, 0.5 + h) - success_probability_curve(p, 0.5 - h)) / (2.0 * h);
            REQUIRE(std::abs(d) < 1e-6);
        }
    }
    SECTION("stationarity at 1/2 holds for any palindromic profile") {
        Rng rng(271828);
        const double h = 1e-6;
        for (int trial = 0; trial < 30; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 8);
            std::vector<double> v(static_cast<std::size_t>(n) + 1);
            for (int i = 0; i <= n; ++i) {
                v[static_cast<std::size_t>(i)] = klmtel::standard_normal(rng);
            }
            for (int i = 0; i <= n / 2; ++i) {
                v[static_cast<std::size_t>(n - i)] = v[static_cast<std::size_t>(i)];
            }
            const CoefficientProfile p = CoefficientProfile::normalized(std::move(v));
            const double d = (success_probability_curve(p, 0.5 + h) - success_probability_curve(p, 0.5 - h)) / (2.0 * h);
            REQUIRE(std::abs(d) < 1e-6);
            REQUIRE(success_probability_curve(p, 0.25) >= success_probability_curve(p, 0.5) - 1e-12);
        }
    }
    SECTION("quadratic coefficient is non-negative, so 1/2 is the minimum") {
        Rng rng(99);
        for (int n = 1; n <= 8; ++n) {
            const CoefficientProfile q = klmtel::sample_profile(rng, n);
            double quad = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double d = q.f(k) - q.f(k - 1);
                quad += d * d;
            }
            REQUIRE(quad >= 0.0);
        }
    }
}

TEST_CASE("full outcome table aggregates the closed-form model") {
    SECTION("n=2 optimal with |+>") {
        const auto table = full_outcome_table(plus_state(), optimal_profile(2));
        REQUIRE(table.size() == 4);
        const std::vector<double> expect_p{1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0, 1.0 / 12.0};
        for (int k = 0; k <= 3; ++k) {
            REQUIRE(table[k].k == k);
            REQUIRE(std::abs(table[k].probability - expect_p[k]) < 1e-12);
        }
        REQUIRE_FALSE(table[0].state.has_value());
        REQUIRE_FALSE(table[3].state.has_value());
        REQUIRE(std::abs(*table[1].fidelity_sq - 0.9) < 1e-12);
        REQUIRE(std::abs(*table[2].fidelity_sq - 0.9) < 1e-12);
    }
    SECTION("n=1 uniform with |+>") {
        const auto table = full_outcome_table(plus_state(), uniform_profile(1));
        REQUIRE(table.size() == 3);
        REQUIRE(std::abs(table[0].probability - 0.25) < 1e-12);
        REQUIRE(std::abs(table[1].probability - 0.5) < 1e-12);
        REQUIRE(std::abs(table[2].probability - 0.25) < 1e-12);
        REQUIRE(std::abs(success_probability(plus_state(), uniform_profile(1)) - 0.5) < 1e-12);
    }
}

TEST_CASE("probability completeness and consistency hold for random inputs") {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const CoefficientProfile q = klmtel::sample_profile(rng, n);
        const QubitState psi = klmtel::sample_qubit(rng);
        const auto table = full_outcome_table(psi, q);

        double total = 0.0;
        double expected_fsq = 0.0;
        for (const auto& row : table) {
            REQUIRE(row.probability >= 0.0);
            total += row.probability;
            if (row.fidelity_sq) {
                expected_fsq += row.probability * *row.fidelity_sq;
            }
        }
        REQUIRE(std::abs(total - 1.0) < 1e-12);
        REQUIRE(std::abs(expected_fsq - success_probability(psi, q)) < 1e-12);
    }
}

TEST_CASE("success probability is invariant under global and relative phases") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const CoefficientProfile q = klmtel::sample_profile(rng, n);
        const QubitState psi = klmtel::sample_qubit(rng);
        const double base = success_probability(psi, q);

        const auto gphase = std::polar(1.0, 2.0 * std::numbers::pi * klmtel::unit_double(rng));
        const auto rphase = std::polar(1.0, 2.0 * std::numbers::pi * klmtel::unit_double(rng));
        const QubitState global(psi.alpha * gphase, psi.beta * gphase);
        const QubitState relative(psi.alpha, psi.beta * rphase);
        REQUIRE(std::abs(success_probability(global, q) - base) < 1e-12);
        REQUIRE(std::abs(success_probability(relative, q) - base) < 1e-12);
    }
}

TEST_CASE("optimal profile is optimal among random profiles and attains lambda_n") {
    Rng rng(31415);
    for (int n = 1; n <= 12; ++n) {
        const CoefficientProfile best = optimal_profile(n);
        const double top = success_probability(plus_state(), best);
        REQUIRE(std::abs(top - klmtel::closed_form_lambda(n)) < 1e-10);
        for (int trial = 0; trial < 1000; ++trial) {
            const CoefficientProfile q = klmtel::sample_profile(rng, n);
            REQUIRE(success_probability(plus_state(), q) <= top + 1e-12);
        }
    }
}
