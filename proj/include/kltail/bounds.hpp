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
#include <optional>
#include <string>
#include <vector>

#include "kltail/distribution.hpp"

namespace kltail {

/// A tail bound evaluated in log-space.
///
/// `log_value` is never clamped and may exceed 0 (a vacuous bound). When the
/// bound has the shape f(n, k) e^{-n eps}, `eps_thresh` holds log f(n, k) / n,
/// the smallest eps at which it drops below one; otherwise it is empty.
/// `valid` is false when the parameters fall outside the range the bound is
/// proved for; the value is still reported.
struct BoundResult {
  std::string name;
  double log_value = 0.0;
  double value = 1.0;
  bool valid = true;
  std::string validity_note;
  std::optional<double> eps_thresh;
  bool conjectural = false;

  /// min(value, 1).
  [[nodiscard]] double probability() const { return log_value >= 0.0 ? 1.0 : value; }
};

enum class Thm1Variant { exact, loose, piecewise };

const char* to_string(Thm1Variant variant);

/// C(n+k-1, k-1) e^{-n eps}.
BoundResult mot_bound(std::uint64_t n, std::uint64_t k, double eps);

/// 2 e^{-n eps}, alphabet size two.
BoundResult binary_bound(std::uint64_t n, double eps);

/// e^{-n eps} (3 c_1 / c_2) sum_{i=0}^{k-2} K_{i-1} (e sqrt(n) / (2 pi))^i.
BoundResult thm1_exact(std::uint64_t n, std::uint64_t k, double eps);

/// e^{-n eps} C_1 (1 + sum_{i=1}^{k-2} (e^3 n / (2 pi i))^{i/2}), k >= 3.
BoundResult thm1_loose(std::uint64_t n, std::uint64_t k, double eps);

/// The four-row closed form, k >= 3. Rows are numbered 1..4 in order of
/// increasing k / n; where rows overlap the smallest is taken.
BoundResult thm1_piecewise(std::uint64_t n, std::uint64_t k, double eps);

/// Rows of the piecewise form whose (n, k) range contains this point.
std::vector<int> thm1_piecewise_rows(std::uint64_t n, std::uint64_t k);

BoundResult thm1(std::uint64_t n, std::uint64_t k, double eps, Thm1Variant variant);

/// 2 (k-1) e^{-n eps / (k-1)}.
BoundResult diffslope_bound(std::uint64_t n, std::uint64_t k, double eps);

struct ThreshComparison {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  double mot = 0.0;          ///< log C(n+k-1, k-1) / n
  double mot_lower = 0.0;    ///< (k-1) log((n+k-1)/(k-1)) / n, a lower bound on `mot`
  double thm1 = 0.0;         ///< from the exact sum
  double thm1_piecewise = 0.0;
  double diffslope = 0.0;
  double ratio = 0.0;        ///< thm1 / mot_lower, the quantity bounded by the asymptotic table
  double ratio_exact_mot = 0.0;  ///< thm1 / mot
  double piecewise_ratio = 0.0;  ///< thm1_piecewise / mot_lower
};

/// eps_thresh of each bound and the improvement ratios. k >= 3.
ThreshComparison eps_thresh_compare(std::uint64_t n, std::uint64_t k);

struct MeanBounds {
  /// (k-1)/(2n) + k^2/(20 n^2) - 1/(12 n^2); holds for uniform P only, and is
  /// present only when n >= 15 k.
  std::optional<double> lower;
  /// log(1 + (k-1)/n), any P and n.
  double upper = 0.0;
};

MeanBounds mean_bounds(std::uint64_t n, std::uint64_t k);

/// Calibrated stand-in for the unspecified constant of the k/n^2 variance branch.
inline constexpr double kDefaultVarianceConstant = 60.0;

struct VarianceBound {
  double value = 0.0;
  int branch = 1;  ///< 1: 6 (3 + log k)^2 / n, 2: C k / n^2
  bool valid = true;
  std::string validity_note;
};

/// min(6 (3 + log k)^2 / n, C k / n^2). Flagged invalid when C < (k-1)/(2k),
/// which would contradict the asymptotic variance (k-1)/(2 n^2).
VarianceBound var_upper(std::uint64_t n, std::uint64_t k,
                        double c_free = kDefaultVarianceConstant);

/// eps_thresh^p + p! / n^p, a bound on E[D^p] implied by any bound of the form
/// f(n, k) e^{-n eps} with threshold eps_thresh.
double moment_upper(std::uint64_t n, std::uint64_t k, unsigned p, double eps_thresh);

/// e^{-n eps} (2e (eps n/(k-1) - log 2))^{k-1}, valid for eps > (k-1)(log 2 + 1)/n.
BoundResult agrawal_bound(std::uint64_t n, std::uint64_t k, double eps);

/// e^{-n eps / 2}, valid for eps > 10 (k-1)/n.
BoundResult agrawal_simplified(std::uint64_t n, std::uint64_t k, double eps);

/// (1 + (k-1)/n)^n 2 e^{-n eps}. Unproven; always flagged conjectural.
BoundResult conjecture_noncentral(std::uint64_t n, std::uint64_t k, double eps);

/// g1 exp(-g2 min(n^2 t^2 / (k-1), n t)) for the centered deviation. Unproven.
BoundResult conjecture_central(std::uint64_t n, std::uint64_t k, double t, double g1, double g2);

/// (2^k - 2) e^{-n phi eps^2 / 4} for the L1 deviation, with phi = phi(pi_P).
BoundResult l1_weissman(std::uint64_t n, std::uint64_t k, double eps, double phi_value);
BoundResult l1_weissman(std::uint64_t n, double eps, const Distribution& p);

/// The KL prefactor of `variant` times e^{-n phi eps^2 / 4}.
BoundResult l1_thm4(std::uint64_t n, std::uint64_t k, double eps, double phi_value,
                    Thm1Variant variant);
BoundResult l1_thm4(std::uint64_t n, double eps, const Distribution& p, Thm1Variant variant);

/// Smallest proven KL bound among binary (k = 2), diffslope, thm1_exact,
/// thm1_piecewise (k >= 3), agrawal (inside its window) and mot. Ties go to
/// the earliest in that order. The winner is returned under its own name.
BoundResult kl_best_bound(std::uint64_t n, std::uint64_t k, double eps);

}  // namespace kltail
