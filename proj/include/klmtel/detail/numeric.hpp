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

#include <array>
#include <cmath>
#include <cstddef>

namespace klmtel::detail {

/// Neumaier-compensated accumulator. Sums stay accurate to a few ulps
/// independently of the number of terms, which keeps probability and
/// normalization checks meaningful at the 1e-12 level.
class NeumaierSum {
  public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const {
        return sum_ + comp_;
    }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline constexpr int kMaxFactorial = 34;

constexpr std::array<double, kMaxFactorial + 1> make_factorial_table() {
    std::array<double, kMaxFactorial + 1> t{};
    t[0] = 1.0;
    for (int i = 1; i <= kMaxFactorial; ++i) {
        t[i] = t[i - 1] * static_cast<double>(i);
    }
    return t;
}

inline constexpr auto kFactorial = make_factorial_table();

inline double factorial(int k) {
    return kFactorial[static_cast<std::size_t>(k)];
}

}  // namespace klmtel::detail
