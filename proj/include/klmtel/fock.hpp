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

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "klmtel/analytic.hpp"
#include "klmtel/detail/numeric.hpp"
#include "klmtel/permanent.hpp"
#include "klmtel/profile.hpp"
#include "klmtel/qubit.hpp"

namespace klmtel {

// Brute-force multimode simulation of the teleportation protocol in the
// single-rail encoding: logical |0> is the vacuum of a mode, logical |1>
// is one photon in the mode. Mode layout after input injection:
//   mode 0        input qubit
//   modes 1..n    first ancilla half (Fourier-transformed and measured)
//   modes n+1..2n second ancilla half (output appears at mode n+k)

/// Photon counts per mode.
using OccupationVector = std::vector<int>;

inline int total_photons(const OccupationVector& o) {
    return std::accumulate(o.begin(), o.end(), 0);
}

/// Default amplitude pruning threshold: terms below this magnitude are
/// dropped after unitary evolution. Removed probability mass is bounded by
/// terms * 1e-28, far under every tolerance used here.
inline constexpr double kDefaultAmplitudePrune = 1e-14;

/// Complex square matrix acting on mode creation operators. Verified
/// unitary (U U^dag = I entrywise within 1e-12) on construction.
class ModeUnitary {
  public:
    ModeUnitary(int dim, std::vector<std::complex<double>> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (dim_ < 1 || entries_.size() != static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_)) {
            throw std::invalid_argument("ModeUnitary: entries must form a dim x dim matrix, dim >= 1");
        }
        for (int i = 0; i < dim_; ++i) {
            for (int j = 0; j < dim_; ++j) {
                std::complex<double> s{0.0, 0.0};
                for (int k = 0; k < dim_; ++k) {
                    s += (*this)(i, k) * std::conj((*this)(j, k));
                }
                const double target = (i == j) ? 1.0 : 0.0;
                if (std::abs(s - target) > 1e-12) {
                    throw std::invalid_argument("ModeUnitary: matrix is not unitary within 1e-12");
                }
            }
        }
    }

    int dim() const {
        return dim_;
    }
    std::complex<double> operator()(int r, int c) const {
        return entries_[static_cast<std::size_t>(r) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(c)];
    }

  private:
    int dim_;
    std::vector<std::complex<double>> entries_;
};

/// Discrete Fourier transform on m modes: U_{jl} = exp(2 pi i j l / m) / sqrt(m).
inline ModeUnitary dft_matrix(int m) {
    if (m < 1) {
        throw std::invalid_argument("dft_matrix: m must be >= 1");
    }
    const double inv = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<std::complex<double>> u(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        for (int l = 0; l < m; ++l) {
            const int ph = (j * l) % m;  // reduce before forming the angle
            u[static_cast<std::size_t>(j) * m + l] = std::polar(inv, 2.0 * std::numbers::pi * ph / m);
        }
    }
    return ModeUnitary(m, std::move(u));
}

/// Normalized superposition over mode occupation vectors. Term keys are
/// ordered lexicographically, so iteration and every reduction over terms
/// is deterministic.
class FockState {
  public:
    FockState(int modes, std::map<OccupationVector, std::complex<double>> terms)
        : modes_(modes), terms_(std::move(terms)) {
        if (modes_ < 1) {
            throw std::invalid_argument("FockState: need at least one mode");
        }
        detail::NeumaierSum n2;
        for (const auto& [occ, amp] : terms_) {
            if (static_cast<int>(occ.size()) != modes_) {
                throw std::invalid_argument("FockState: occupation length must equal the mode count");
            }
            if (std::any_of(occ.begin(), occ.end(), [](int c) { return c < 0; })) {
                throw std::invalid_argument("FockState: occupations must be non-negative");
            }
            n2.add(std::norm(amp));
        }
        if (std::abs(n2.value() - 1.0) > 1e-10) {
            throw std::invalid_argument("FockState: state must be normalized within 1e-10");
        }
    }

    int modes() const {
        return modes_;
    }
    const std::map<OccupationVector, std::complex<double>>& terms() const {
        return terms_;
    }

    double norm() const {
        detail::NeumaierSum n2;
        for (const auto& [occ, amp] : terms_) {
            n2.add(std::norm(amp));
        }
        return std::sqrt(n2.value());
    }

  private:
    int modes_;
    std::map<OccupationVector, std::complex<double>> terms_;
};

/// The 2n-mode ancilla resource state: term i carries amplitude f(i) on the
/// occupation (0^{n-i}, 1^i, 0^i, 1^{n-i}). Every term holds exactly n photons.
inline FockState build_ancilla(const CoefficientProfile& profile) {
    const int n = profile.n();
    std::map<OccupationVector, std::complex<double>> terms;
    for (int i = 0; i <= n; ++i) {
        if (profile.f(i) == 0.0) {
            continue;
        }
        OccupationVector occ(static_cast<std::size_t>(2 * n), 0);
        for (int j = n - i; j < n; ++j) {
            occ[static_cast<std::size_t>(j)] = 1;
        }
        for (int j = n + i; j < 2 * n; ++j) {
            occ[static_cast<std::size_t>(j)] = 1;
        }
        terms.emplace(std::move(occ), profile.f(i));
    }
    return FockState(2 * n, std::move(terms));
}

/// Tensor the input qubit onto mode 0: alpha |vac> + beta |1 photon>.
inline FockState inject_input(const QubitState& psi, const FockState& ancilla) {
    std::map<OccupationVector, std::complex<double>> terms;
    for (const auto& [occ, amp] : ancilla.terms()) {
        OccupationVector with0;
        with0.reserve(occ.size() + 1);
        with0.push_back(0);
        with0.insert(with0.end(), occ.begin(), occ.end());
        if (psi.alpha != std::complex<double>{0.0, 0.0}) {
            terms.emplace(with0, psi.alpha * amp);
        }
        if (psi.beta != std::complex<double>{0.0, 0.0}) {
            with0[0] = 1;
            terms.emplace(std::move(with0), psi.beta * amp);
        }
    }
    return FockState(ancilla.modes() + 1, std::move(terms));
}

/// All occupation vectors of `modes` modes holding exactly `photons`
/// photons, in ascending lexicographic order.
inline std::vector<OccupationVector> enumerate_occupations(int modes, int photons) {
    if (modes < 1 || photons < 0) {
        throw std::invalid_argument("enumerate_occupations: need modes >= 1 and photons >= 0");
    }
    std::vector<OccupationVector> out;
    OccupationVector cur;
    cur.reserve(static_cast<std::size_t>(modes));
    auto rec = [&](auto&& self, int remaining) -> void {
        if (static_cast<int>(cur.size()) == modes - 1) {
            cur.push_back(remaining);
            out.push_back(cur);
            cur.pop_back();
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            cur.push_back(c);
            self(self, remaining - c);
            cur.pop_back();
        }
    };
    rec(rec, photons);
    return out;
}

namespace detail {

// <t| U |s> = Per(U[t,s]) / sqrt(prod s_j! prod t_i!), where U[t,s] repeats
// column j s_j times and row i t_i times.
inline std::complex<double> transition_amplitude(const ModeUnitary& u, const OccupationVector& t,
                                                 const OccupationVector& s) {
    const int photons = total_photons(s);
    std::vector<int> rows, cols;
    rows.reserve(static_cast<std::size_t>(photons));
    cols.reserve(static_cast<std::size_t>(photons));
    for (int i = 0; i < u.dim(); ++i) {
        rows.insert(rows.end(), static_cast<std::size_t>(t[static_cast<std::size_t>(i)]), i);
        cols.insert(cols.end(), static_cast<std::size_t>(s[static_cast<std::size_t>(i)]), i);
    }
    std::vector<std::complex<double>> sub(static_cast<std::size_t>(photons) * static_cast<std::size_t>(photons));
    for (int r = 0; r < photons; ++r) {
        for (int c = 0; c < photons; ++c) {
            sub[static_cast<std::size_t>(r) * static_cast<std::size_t>(photons) + static_cast<std::size_t>(c)] =
                u(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
        }
    }
    double fac = 1.0;
    for (int i = 0; i < u.dim(); ++i) {
        fac *= factorial(s[static_cast<std::size_t>(i)]) * factorial(t[static_cast<std::size_t>(i)]);
    }
    return permanent(sub, photons) / std::sqrt(fac);
}

}  // namespace detail

/// Evolve a state by a unitary acting on the creation operators of
/// `target_modes`. Photon number on the targets is conserved term by term
/// and the norm is preserved within 1e-10 (checked; violation throws
/// std::logic_error). Amplitudes below `prune` are dropped afterwards.
inline FockState apply_mode_unitary(const FockState& state, const ModeUnitary& u,
                                    const std::vector<int>& target_modes,
                                    double prune = kDefaultAmplitudePrune) {
    const int m = static_cast<int>(target_modes.size());
    if (m != u.dim()) {
        throw std::invalid_argument("apply_mode_unitary: target mode count must equal the unitary dimension");
    }
    std::vector<int> sorted = target_modes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("apply_mode_unitary: target modes must be distinct");
    }
    if (sorted.front() < 0 || sorted.back() >= state.modes()) {
        throw std::invalid_argument("apply_mode_unitary: target mode out of range");
    }

    // one transition row per distinct input occupation of the targets
    std::map<OccupationVector, std::vector<std::pair<OccupationVector, std::complex<double>>>> rows;
    std::map<OccupationVector, std::complex<double>> out;
    for (const auto& [occ, amp] : state.terms()) {
        OccupationVector sub(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            sub[static_cast<std::size_t>(i)] = occ[static_cast<std::size_t>(target_modes[static_cast<std::size_t>(i)])];
        }
        auto it = rows.find(sub);
        if (it == rows.end()) {
            std::vector<std::pair<OccupationVector, std::complex<double>>> row;
            for (const auto& t : enumerate_occupations(m, total_photons(sub))) {
                const std::complex<double> a = detail::transition_amplitude(u, t, sub);
                if (a != std::complex<double>{0.0, 0.0}) {
                    row.emplace_back(t, a);
                }
            }
            it = rows.emplace(sub, std::move(row)).first;
        }
        OccupationVector dst = occ;
        for (const auto& [t, a] : it->second) {
            for (int i = 0; i < m; ++i) {
                dst[static_cast<std::size_t>(target_modes[static_cast<std::size_t>(i)])] = t[static_cast<std::size_t>(i)];
            }
            out[dst] += amp * a;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (std::abs(it->second) < prune) {
            it = out.erase(it);
        } else {
            ++it;
        }
    }

    detail::NeumaierSum n2;
    for (const auto& [occ, amp] : out) {
        n2.add(std::norm(amp));
    }
    const double in_norm = state.norm();
    if (std::abs(std::sqrt(n2.value()) - in_norm) > 1e-10) {
        throw std::logic_error("apply_mode_unitary: norm drifted beyond 1e-10 (unitarity defect)");
    }
    return FockState(state.modes(), std::move(out));
}

/// One photon-counting outcome: the observed pattern over the measured
/// modes, its total count k, the outcome probability, and for heralded
/// successes the conditional output qubit read from mode n+k plus the
/// phase correction that maps it onto the closed-form teleported state.
struct MeasurementRecord {
    OccupationVector pattern;
    int k;
    double probability;
    std::optional<QubitState> conditional;
    std::optional<double> correction_phase;
};

/// Photon counting on the Fourier-transformed modes 0..n of a (2n+1)-mode
/// protocol state. Returns one record per occupation pattern with nonzero
/// probability, in lexicographic pattern order. For 1 <= k <= n the
/// remaining modes must sit in the heralded configuration (zeros before
/// mode n+k, ones after); anything else indicates a wiring defect and
/// throws std::logic_error.
inline std::vector<MeasurementRecord> measure_modes(const FockState& state,
                                                    const std::vector<int>& measured_modes) {
    const int q = static_cast<int>(measured_modes.size());
    const int n = q - 1;
    if (n < 1 || state.modes() != 2 * n + 1) {
        throw std::invalid_argument("measure_modes: expected the n+1 measured modes of a (2n+1)-mode state");
    }
    for (int i = 0; i < q; ++i) {
        if (measured_modes[static_cast<std::size_t>(i)] != i) {
            throw std::invalid_argument("measure_modes: canonical wiring measures modes 0..n");
        }
    }

    std::map<OccupationVector, std::map<OccupationVector, std::complex<double>>> buckets;
    for (const auto& [occ, amp] : state.terms()) {
        OccupationVector pattern(occ.begin(), occ.begin() + q);
        OccupationVector rest(occ.begin() + q, occ.end());
        buckets[std::move(pattern)].emplace(std::move(rest), amp);
    }

    std::vector<MeasurementRecord> records;
    records.reserve(buckets.size());
    for (const auto& [pattern, rests] : buckets) {
        detail::NeumaierSum p2;
        for (const auto& [rest, amp] : rests) {
            p2.add(std::norm(amp));
        }
        const double prob = p2.value();
        if (!(prob > 0.0)) {
            continue;
        }
        MeasurementRecord rec{pattern, total_photons(pattern), prob, std::nullopt, std::nullopt};
        if (rec.k >= 1 && rec.k <= n) {
            const int out_idx = rec.k - 1;  // mode n+k, local to the unmeasured block
            std::complex<double> amp0{0.0, 0.0};
            std::complex<double> amp1{0.0, 0.0};
            for (const auto& [rest, amp] : rests) {
                for (int j = 0; j < n; ++j) {
                    if (j == out_idx) {
                        continue;
                    }
                    const int expected = (j < out_idx) ? 0 : 1;
                    if (rest[static_cast<std::size_t>(j)] != expected) {
                        throw std::logic_error("measure_modes: unmeasured modes left the heralded configuration (wiring defect)");
                    }
                }
                const int c = rest[static_cast<std::size_t>(out_idx)];
                if (c == 0) {
                    amp0 += amp;
                } else if (c == 1) {
                    amp1 += amp;
                } else {
                    throw std::logic_error("measure_modes: output mode outside the single-rail subspace (wiring defect)");
                }
            }
            const double nrm = std::sqrt(std::norm(amp0) + std::norm(amp1));
            rec.conditional = QubitState(amp0 / nrm, amp1 / nrm);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

/// Phase phi such that |1> -> exp(-i phi)|1> maps the record's conditional
/// state onto the closed-form teleported state, up to global phase. When the
/// input (or the profile at k) leaves one amplitude empty no relative phase
/// is observable and 0 is returned by convention.
inline double correction_phase(const MeasurementRecord& record, const CoefficientProfile& profile,
                               const QubitState& psi) {
    if (!record.conditional) {
        throw std::invalid_argument("correction_phase: record is a failure outcome without a conditional state");
    }
    const QubitState target = teleported_state(psi, profile, record.k);
    const std::complex<double> a = record.conditional->alpha;
    const std::complex<double> b = record.conditional->beta;
    constexpr double tiny = 1e-12;
    if (std::abs(a) < tiny || std::abs(b) < tiny || std::abs(target.alpha) < tiny || std::abs(target.beta) < tiny) {
        return 0.0;
    }
    return std::arg((b / target.beta) * std::conj(a / target.alpha));
}

/// Apply the outcome-dependent correction |1> -> exp(-i phi)|1>.
inline QubitState apply_phase_correction(const QubitState& state, double phi) {
    return QubitState(state.alpha, state.beta * std::polar(1.0, -phi));
}

/// Oracle cost guard. Measured-mode patterns number C(n+k, k) per k-photon
/// sector; at the default cap the evolved term map stays well below 1e5
/// entries, so a full simulation runs in milliseconds.
struct OracleOptions {
    int n_cap = 6;
    double prune = kDefaultAmplitudePrune;
};

/// End-to-end protocol run: ancilla preparation, input injection, the
/// (n+1)-point Fourier transform on modes 0..n, photon counting, and the
/// per-outcome phase corrections.
inline std::vector<MeasurementRecord> simulate_protocol(const QubitState& psi,
                                                        const CoefficientProfile& profile,
                                                        const OracleOptions& options = {}) {
    const int n = profile.n();
    if (n > options.n_cap) {
        throw std::invalid_argument("simulate_protocol: n exceeds the configured oracle cap");
    }
    FockState state = inject_input(psi, build_ancilla(profile));
    std::vector<int> targets(static_cast<std::size_t>(n) + 1);
    std::iota(targets.begin(), targets.end(), 0);
    state = apply_mode_unitary(state, dft_matrix(n + 1), targets, options.prune);
    std::vector<MeasurementRecord> records = measure_modes(state, targets);
    for (auto& rec : records) {
        if (rec.conditional) {
            rec.correction_phase = correction_phase(rec, profile, psi);
        }
    }
    return records;
}

/// Worst-case deviations between one oracle run and the closed-form model.
struct EquivalenceReport {
    double probability_dev = 0.0;        // per-k totals vs the closed-form p_k
    double conditional_dev = 0.0;        // 1 - F^2 of corrected conditionals vs the closed-form state
    double expected_fidelity_dev = 0.0;  // sum p F^2 vs the closed-form success probability
    double completeness_dev = 0.0;       // |sum of record probabilities - 1|

    double worst() const {
        return std::max(std::max(probability_dev, conditional_dev),
                        std::max(expected_fidelity_dev, completeness_dev));
    }
};

/// Run the oracle and compare everything it produces against the
/// closed-form model for the same input and profile.
inline EquivalenceReport compare_with_analytic(const QubitState& psi, const CoefficientProfile& profile,
                                               const OracleOptions& options = {}) {
    const std::vector<MeasurementRecord> records = simulate_protocol(psi, profile, options);
    const int n = profile.n();

    std::vector<detail::NeumaierSum> per_k(static_cast<std::size_t>(n) + 2);
    detail::NeumaierSum expected_fsq;
    EquivalenceReport rep;
    for (const auto& rec : records) {
        per_k[static_cast<std::size_t>(rec.k)].add(rec.probability);
        if (rec.conditional) {
            const QubitState corrected = apply_phase_correction(*rec.conditional, rec.correction_phase.value_or(0.0));
            const QubitState target = teleported_state(psi, profile, rec.k);
            rep.conditional_dev = std::max(rep.conditional_dev, 1.0 - fidelity_sq(corrected, target));
            expected_fsq.add(rec.probability * fidelity_sq(psi, corrected));
        }
    }

    detail::NeumaierSum total;
    for (int k = 0; k <= n + 1; ++k) {
        const double pk = per_k[static_cast<std::size_t>(k)].value();
        total.add(pk);
        rep.probability_dev = std::max(rep.probability_dev, std::abs(pk - outcome_probability(psi, profile, k)));
    }
    rep.completeness_dev = std::abs(total.value() - 1.0);
    rep.expected_fidelity_dev = std::abs(expected_fsq.value() - success_probability(psi, profile));
    return rep;
}

}  // namespace klmtel
