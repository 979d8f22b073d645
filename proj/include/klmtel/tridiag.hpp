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
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "klmtel/detail/numeric.hpp"

namespace klmtel {

/// Real symmetric tridiagonal matrix, stored as its diagonal and
/// off-diagonal. Immutable after construction.
class SymTridiagonal {
  public:
    SymTridiagonal(std::vector<double> diag, std::vector<double> offdiag)
        : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
        if (diag_.empty()) {
            throw std::invalid_argument("SymTridiagonal: diagonal must be non-empty");
        }
        if (offdiag_.size() + 1 != diag_.size()) {
            throw std::invalid_argument("SymTridiagonal: offdiag length must equal diag length - 1");
        }
        auto finite = [](double x) { return std::isfinite(x); };
        if (!std::all_of(diag_.begin(), diag_.end(), finite) ||
            !std::all_of(offdiag_.begin(), offdiag_.end(), finite)) {
            throw std::invalid_argument("SymTridiagonal: entries must be finite");
        }
    }

    std::size_t size() const {
        return diag_.size();
    }
    const std::vector<double>& diag() const {
        return diag_;
    }
    const std::vector<double>& offdiag() const {
        return offdiag_;
    }

    /// y = M x
    std::vector<double> apply(const std::vector<double>& x) const {
        if (x.size() != size()) {
            throw std::invalid_argument("SymTridiagonal::apply: dimension mismatch");
        }
        const std::size_t m = size();
        std::vector<double> y(m);
        for (std::size_t i = 0; i < m; ++i) {
            double v = diag_[i] * x[i];
            if (i > 0) {
                v += offdiag_[i - 1] * x[i - 1];
            }
            if (i + 1 < m) {
                v += offdiag_[i] * x[i + 1];
            }
            y[i] = v;
        }
        return y;
    }

    /// Max absolute row sum.
    double norm_inf() const {
        const std::size_t m = size();
        double r = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double s = std::abs(diag_[i]);
            if (i > 0) {
                s += std::abs(offdiag_[i - 1]);
            }
            if (i + 1 < m) {
                s += std::abs(offdiag_[i]);
            }
            r = std::max(r, s);
        }
        return r;
    }

  private:
    std::vector<double> diag_;
    std::vector<double> offdiag_;
};

/// One eigenvalue with its unit-norm eigenvector.
struct EigenPair {
    double value;
    std::vector<double> vector;
};

namespace detail {

// Sturm count: number of eigenvalues of t strictly below x, with exact-zero
// pivots nudged to -pivmin so ties count as "below".
inline int eigenvalues_below(const SymTridiagonal& t, double x, double pivmin) {
    const auto& d = t.diag();
    const auto& e = t.offdiag();
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double e2 = (i == 0) ? 0.0 : e[i - 1] * e[i - 1];
        q = d[i] - x - e2 / q;
        if (std::abs(q) < pivmin) {
            q = -pivmin;
        }
        if (q < 0.0) {
            ++count;
        }
    }
    return count;
}

inline std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t) {
    const auto& d = t.diag();
    const auto& e = t.offdiag();
    const std::size_t m = d.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < m; ++i) {
        double r = 0.0;
        if (i > 0) {
            r += std::abs(e[i - 1]);
        }
        if (i + 1 < m) {
            r += std::abs(e[i]);
        }
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    return {lo, hi};
}

// LU factorization of (t - sigma*I) with partial pivoting, in the style of
// LAPACK's dgttrf. Row swaps introduce a second superdiagonal.
struct ShiftedLU {
    std::vector<double> d0;    // main diagonal of U
    std::vector<double> d1;    // first superdiagonal of U
    std::vector<double> d2;    // second superdiagonal of U (fill-in)
    std::vector<double> mult;  // elimination multipliers
    std::vector<char> swapped;
};

inline ShiftedLU factor_shifted(const SymTridiagonal& t, double sigma, double pivmin) {
    const auto& d = t.diag();
    const auto& e = t.offdiag();
    const std::size_t m = d.size();
    ShiftedLU f;
    f.d0.resize(m);
    f.d1.assign(m > 1 ? m - 1 : 0, 0.0);
    f.d2.assign(m > 2 ? m - 2 : 0, 0.0);
    f.mult.assign(m > 1 ? m - 1 : 0, 0.0);
    f.swapped.assign(m > 1 ? m - 1 : 0, 0);
    for (std::size_t i = 0; i < m; ++i) {
        f.d0[i] = d[i] - sigma;
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        f.d1[i] = e[i];
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double sub = e[i];
        if (std::abs(f.d0[i]) >= std::abs(sub)) {
            double piv = f.d0[i];
            if (std::abs(piv) < pivmin) {
                piv = f.d0[i] = (piv < 0.0 ? -pivmin : pivmin);
            }
            const double fact = sub / piv;
            f.mult[i] = fact;
            f.d0[i + 1] -= fact * f.d1[i];
        } else {
            const double fact = f.d0[i] / sub;
            f.mult[i] = fact;
            f.swapped[i] = 1;
            f.d0[i] = sub;
            const double old_d1 = f.d1[i];
            f.d1[i] = f.d0[i + 1];
            f.d0[i + 1] = old_d1 - fact * f.d1[i];
            if (i + 2 < m) {
                f.d2[i] = f.d1[i + 1];
                f.d1[i + 1] = -fact * f.d2[i];
            }
        }
    }
    // back substitution divides by every d0 entry
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(f.d0[i]) < pivmin) {
            f.d0[i] = (f.d0[i] < 0.0 ? -pivmin : pivmin);
        }
    }
    return f;
}

inline std::vector<double> solve_shifted(const ShiftedLU& f, std::vector<double> b) {
    const int m = static_cast<int>(f.d0.size());
    for (int i = 0; i + 1 < m; ++i) {
        if (!f.swapped[i]) {
            b[i + 1] -= f.mult[i] * b[i];
        } else {
            const double tmp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = tmp - f.mult[i] * b[i];
        }
    }
    b[m - 1] /= f.d0[m - 1];
    if (m > 1) {
        b[m - 2] = (b[m - 2] - f.d1[m - 2] * b[m - 1]) / f.d0[m - 2];
    }
    for (int i = m - 3; i >= 0; --i) {
        b[i] = (b[i] - f.d1[i] * b[i + 1] - f.d2[i] * b[i + 2]) / f.d0[i];
    }
    return b;
}

// Deterministic start vectors for inverse iteration: all-ones, alternating
// signs, then a fixed splitmix sequence. No randomized state anywhere.
inline std::vector<double> start_vector(std::size_t m, int attempt) {
    std::vector<double> v(m);
    if (attempt == 0) {
        std::fill(v.begin(), v.end(), 1.0);
    } else if (attempt == 1) {
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = (i % 2 == 0) ? 1.0 : -1.0;
        }
    } else {
        std::uint64_t s = 0x9e3779b97f4a7c15ull;
        for (std::size_t i = 0; i < m; ++i) {
            s = s * 6364136223846793005ull + 1442695040888963407ull;
            v[i] = static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
        }
    }
    NeumaierSum nrm2;
    for (double x : v) {
        nrm2.add(x * x);
    }
    const double inv = 1.0 / std::sqrt(nrm2.value());
    for (double& x : v) {
        x *= inv;
    }
    return v;
}

}  // namespace detail

/// Algebraically largest eigenvalue and unit eigenvector of a symmetric
/// tridiagonal matrix.
///
/// Eigenvalue by bisection on Sturm counts to interval width `tol`
/// (cap 10*m + 64 steps), eigenvector by inverse iteration on the shifted
/// LU factorization (cap 50 steps per start vector). Fully deterministic.
/// The eigenvector sign is fixed so its largest-magnitude entry is positive.
/// Failure to converge indicates a solver defect and throws
/// std::runtime_error.
inline EigenPair largest_eigenpair(const SymTridiagonal& t, double tol = 1e-12) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("largest_eigenpair: tol must be positive");
    }
    const std::size_t m = t.size();
    if (m == 1) {
        return EigenPair{t.diag()[0], {1.0}};
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    double emax2 = 0.0;
    for (double x : t.offdiag()) {
        emax2 = std::max(emax2, x * x);
    }
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, emax2);

    auto [glo, ghi] = detail::gershgorin_bounds(t);
    double a = glo - eps * (std::abs(glo) + 1.0);
    double b = ghi + eps * (std::abs(ghi) + 1.0);
    const int cap = 10 * static_cast<int>(m) + 64;
    for (int it = 0; it < cap && (b - a) > tol; ++it) {
        const double mid = 0.5 * (a + b);
        if (detail::eigenvalues_below(t, mid, pivmin) == static_cast<int>(m)) {
            b = mid;
        } else {
            a = mid;
        }
    }
    if (b - a > tol) {
        throw std::runtime_error("largest_eigenpair: bisection did not reach tolerance (solver defect)");
    }
    const double sigma = 0.5 * (a + b);

    const double tnorm = t.norm_inf();
    const double scale = std::max(1.0, tnorm);
    const double resid_goal = 64.0 * eps * scale;
    const double resid_limit = 1e-10 * scale;
    const double value_slack = 4.0 * tol + 1024.0 * eps * scale;

    const auto lu = detail::factor_shifted(t, sigma, pivmin);
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<double> v = detail::start_vector(m, attempt);
        double rho = sigma;
        double resid = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 50; ++iter) {
            std::vector<double> y = detail::solve_shifted(lu, v);
            double amax = 0.0;
            for (double x : y) {
                amax = std::max(amax, std::abs(x));
            }
            if (!(amax > 0.0) || !std::isfinite(amax)) {
                break;  // collapsed solve; try the next start vector
            }
            for (double& x : y) {
                x /= amax;
            }
            detail::NeumaierSum nrm2;
            for (double x : y) {
                nrm2.add(x * x);
            }
            const double inv = 1.0 / std::sqrt(nrm2.value());
            for (double& x : y) {
                x *= inv;
            }
            v = std::move(y);

            const std::vector<double> tv = t.apply(v);
            detail::NeumaierSum dot;
            for (std::size_t i = 0; i < m; ++i) {
                dot.add(v[i] * tv[i]);
            }
            rho = dot.value();
            resid = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                resid = std::max(resid, std::abs(tv[i] - rho * v[i]));
            }
            if (resid <= resid_goal) {
                break;
            }
        }
        // accept only a residual-certified vector whose Rayleigh quotient sits
        // inside the bisection bracket; otherwise the iteration locked onto a
        // different eigenvalue (possible when the start vector is orthogonal
        // to the target eigenvector)
        if (resid <= resid_limit && std::abs(rho - sigma) <= value_slack) {
            std::size_t imax = 0;
            for (std::size_t i = 1; i < m; ++i) {
                if (std::abs(v[i]) > std::abs(v[imax])) {
                    imax = i;
                }
            }
            if (v[imax] < 0.0) {
                for (double& x : v) {
                    x = -x;
                }
            }
            return EigenPair{rho, std::move(v)};
        }
    }
    throw std::runtime_error("largest_eigenpair: inverse iteration did not converge (solver defect)");
}

/// The (n+1)x(n+1) quadratic-form matrix whose largest eigenvalue is the
/// optimal success probability: diag (1,2,...,2,1)/4, off-diagonal 1/4.
inline SymTridiagonal build_matrix_a(int n) {
    if (n < 1) {
        throw std::invalid_argument("build_matrix_a: n must be >= 1");
    }
    std::vector<double> d(static_cast<std::size_t>(n) + 1, 0.5);
    d.front() = 0.25;
    d.back() = 0.25;
    std::vector<double> e(static_cast<std::size_t>(n), 0.25);
    return SymTridiagonal(std::move(d), std::move(e));
}

/// The n x n path-graph adjacency matrix: zero diagonal, unit off-diagonal.
inline SymTridiagonal build_matrix_b(int n) {
    if (n < 1) {
        throw std::invalid_argument("build_matrix_b: n must be >= 1");
    }
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    std::vector<double> e(n > 1 ? static_cast<std::size_t>(n) - 1 : 0, 1.0);
    return SymTridiagonal(std::move(d), std::move(e));
}

/// lambda_n = 1/2 + cos(pi/(n+1))/2, the closed form of the largest
/// eigenvalue of build_matrix_a(n).
inline double closed_form_lambda(int n) {
    if (n < 1) {
        throw std::invalid_argument("closed_form_lambda: n must be >= 1");
    }
    return 0.5 + 0.5 * std::cos(std::numbers::pi / (n + 1));
}

/// mu_n = 2 cos(pi/(n+1)), the largest eigenvalue of build_matrix_b(n).
/// Satisfies closed_form_lambda(n) == 0.5 + closed_form_mu(n)/4.
inline double closed_form_mu(int n) {
    if (n < 1) {
        throw std::invalid_argument("closed_form_mu: n must be >= 1");
    }
    return 2.0 * std::cos(std::numbers::pi / (n + 1));
}

}  // namespace klmtel
