// Copyright 2026 The kltail Authors
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

#include <cstdint>
#include <memory>
#include <vector>

namespace kltail {

/// The constants d_0 = e^3/2, C_0 = e^3/(2 pi) and C_1 = (3 c_1 / c_2) sqrt(d_0 / (2 pi e)).
struct UniversalConstants {
  double d0;
  double C0;
  double C1;
};

const UniversalConstants& universal_constants();

/// Wallis integrals c_m = int_0^1 (1-x)^{m/2} / sqrt(x - x^2) dx, their running
/// products K_m, and the variants h_m (h_2 replaced by c_1) and H_m.
///
/// K_m decays super-exponentially, so products are held in log-space. Index
/// conventions: `c[m]`, `h[m]` for m >= 0; `log_K[m + 1]`, `log_H[m + 1]` for
/// m >= -1 (K_{-1} = H_{-1} = 1).
struct WallisTable {
  int max_index = -1;
  std::vector<double> c;
  std::vector<double> log_K;
  std::vector<double> h;
  std::vector<double> log_H;

  /// Builds the table for indices 0..m_max with the recursion c_m = c_{m-2} (m-1)/m.
  static WallisTable build(int m_max);

  [[nodiscard]] double K(int m) const;
  [[nodiscard]] double H(int m) const;
};

/// Process-wide cache, grown geometrically on demand. The returned snapshot is
/// immutable and covers at least `m_max`; concurrent callers are safe.
std::shared_ptr<const WallisTable> wallis_table(int m_max);

double wallis_c(int m);
double wallis_K(int m);
double log_wallis_K(int m);
double wallis_h(int m);
double log_wallis_H(int m);

/// log(a!) via lgamma.
double log_factorial(std::uint64_t a);

/// log C(a, b). Throws std::invalid_argument if b > a.
double log_binomial(std::uint64_t a, std::uint64_t b);

}  // namespace kltail
