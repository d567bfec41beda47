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
#include <span>
#include <stdexcept>
#include <vector>

#include "kltail/distribution.hpp"

namespace kltail {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

/// Environment variable that overrides the enumeration cap.
inline constexpr const char* kEnumerationCapEnv = "KLTAIL_ENUM_CAP";

/// kDefaultEnumerationCap unless KLTAIL_ENUM_CAP holds a positive integer.
std::uint64_t enumeration_cap();

/// One (n, k) cell of the small grid where exhaustive enumeration is cheap.
struct DeskCell {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
};

inline constexpr std::uint64_t kDeskMaxN = 18;
inline constexpr std::uint64_t kDeskMaxK = 4;

/// n in 1..n_max crossed with k in 2..k_max, n varying fastest.
std::vector<DeskCell> desk_grid(std::uint64_t n_max = kDeskMaxN, std::uint64_t k_max = kDeskMaxK);

/// Number of types C(n+k-1, k-1), saturating at UINT64_MAX.
std::uint64_t type_count(std::uint64_t n, std::uint64_t k);

class EnumerationLimitError : public std::runtime_error {
 public:
  EnumerationLimitError(std::uint64_t count, std::uint64_t cap);
  [[nodiscard]] std::uint64_t count() const { return count_; }
  [[nodiscard]] std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t count_;
  std::uint64_t cap_;
};

/// Streams every nonnegative integer k-vector summing to n exactly once, in
/// colexicographic order: (n, 0, ..., 0) first and (0, ..., 0, n) last.
///
///   TypeEnumerator types(n, k);
///   do { use(types.counts()); } while (types.advance());
class TypeEnumerator {
 public:
  TypeEnumerator(std::uint64_t n, std::uint64_t k, std::uint64_t cap = enumeration_cap());

  [[nodiscard]] std::span<const std::uint64_t> counts() const { return counts_; }
  /// Moves to the successor; false once the last type has been visited.
  bool advance();
  [[nodiscard]] std::uint64_t total() const { return total_; }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_;
};

/// Every type of (n, k) materialised; for small cases and tests.
std::vector<CountVector> enumerate_types(std::uint64_t n, std::uint64_t k,
                                         std::uint64_t cap = enumeration_cap());

struct ExactTail {
  double probability = 0.0;
  std::uint64_t types_enumerated = 0;
  /// log of the total pmf mass visited; 0 up to rounding.
  double log_mass_check = 0.0;
};

/// P(D(P_hat || P) >= eps) by enumeration. Ties at eps are in the event.
ExactTail exact_tail_kl(const Distribution& p, std::uint64_t n, double eps,
                        std::uint64_t cap = enumeration_cap());
/// One enumeration pass for a whole eps grid.
std::vector<ExactTail> exact_tail_kl(const Distribution& p, std::uint64_t n,
                                     std::span<const double> eps_grid,
                                     std::uint64_t cap = enumeration_cap());

/// P(||P_hat - P||_1 >= eps) by enumeration.
ExactTail exact_tail_l1(const Distribution& p, std::uint64_t n, double eps,
                        std::uint64_t cap = enumeration_cap());
std::vector<ExactTail> exact_tail_l1(const Distribution& p, std::uint64_t n,
                                     std::span<const double> eps_grid,
                                     std::uint64_t cap = enumeration_cap());

struct ExactMoments {
  double mean = 0.0;
  double var = 0.0;
};

/// Mean and variance of D(P_hat || P).
ExactMoments exact_mean_var_kl(const Distribution& p, std::uint64_t n,
                               std::uint64_t cap = enumeration_cap());

/// E[X_i^2] and E[X_i X_j] for X_i = (p_hat_i - p_i)^2 / p_i - (1 - p_i)/n.
struct QuadraticMoments {
  double xi_sq = 0.0;
  double xi_xj = 0.0;
};

/// Closed forms:
///   E[X_i^2]   = (1-p_i)(1 + 2(n-3) p_i (1-p_i)) / (n^3 p_i)
///   E[X_i X_j] = (2(p_i + p_j) - 1 + 2(n-3) p_i p_j) / n^3
QuadraticMoments exact_quadratic_moments(const Distribution& p, std::uint64_t n, std::size_t i,
                                         std::size_t j);

/// The same moments (plus E[X_i]) by full enumeration in extended precision.
struct EnumeratedQuadraticMoments {
  double xi = 0.0;
  double xi_sq = 0.0;
  double xi_xj = 0.0;
};
EnumeratedQuadraticMoments enumerate_quadratic_moments(const Distribution& p, std::uint64_t n,
                                                       std::size_t i, std::size_t j,
                                                       std::uint64_t cap = enumeration_cap());

/// Verification mode: recomputes by enumeration and throws std::runtime_error
/// when either moment differs from its closed form by more than `rel_tol`.
QuadraticMoments verified_quadratic_moments(const Distribution& p, std::uint64_t n, std::size_t i,
                                            std::size_t j, double rel_tol = 1e-12);

/// E_i = E_{X~B(n,p)}[(1 - X/n)^{i/2} e^{n D((X/n, 1-X/n) || (p, 1-p))}]
///     = sum_l C(n,l) l^l (n-l)^{n-l} / n^n (1 - l/n)^{i/2},
/// which does not depend on p (validated, then unused). Uses 0^0 = 1.
double binomial_exp_kl_moment(double p, std::uint64_t n, unsigned i);

/// h_i e sqrt(n) / (2 pi), the claimed upper bound on E_i.
double binomial_exp_kl_moment_bound(std::uint64_t n, unsigned i);

}  // namespace kltail
