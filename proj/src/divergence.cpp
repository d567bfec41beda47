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

#include "kltail/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "kltail/special.hpp"

namespace kltail {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* who) {
  if (a != b) {
    throw std::invalid_argument(std::string(who) + ": length mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

// Sums of p over every subset of `items`, indexed by bitmask.
std::vector<double> subset_sums(std::span<const double> items) {
  std::vector<double> sums(std::size_t{1} << items.size());
  sums[0] = 0.0;
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
    sums[mask] = sums[mask & (mask - 1)] + items[low];
  }
  return sums;
}

double balance(double mass) { return std::min(mass, 1.0 - mass); }

double pi_exhaustive(std::span<const double> probs) {
  double best = 0.0;
  for (double s : subset_sums(probs)) {
    best = std::max(best, balance(s));
  }
  return best;
}

double pi_meet_in_the_middle(std::span<const double> probs) {
  const std::size_t half = probs.size() / 2;
  const auto left = subset_sums(probs.subspan(0, half));
  auto right = subset_sums(probs.subspan(half));
  std::sort(right.begin(), right.end());
  double best = 0.0;
  for (double a : left) {
    const double target = 0.5 - a;
    auto it = std::lower_bound(right.begin(), right.end(), target);
    if (it != right.end()) best = std::max(best, balance(a + *it));
    if (it != right.begin()) best = std::max(best, balance(a + *std::prev(it)));
  }
  return best;
}

}  // namespace

double kl(std::span<const double> q, const Distribution& p) {
  require_same_length(q.size(), p.size(), "kl");
  if (!p.strictly_interior()) {
    throw std::invalid_argument("kl: reference distribution has a zero entry");
  }
  CompensatedSum sum;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] < 0.0) {
      throw std::invalid_argument("kl: negative entry at index " + std::to_string(i));
    }
    if (q[i] > 0.0) {
      sum += q[i] * std::log(q[i] / p[i]);
    }
  }
  return sum.value();
}

double kl(const CountVector& counts, const Distribution& p) {
  return kl(counts.empirical_law(), p);
}

double binary_kl(double q, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("binary_kl: p must lie in (0, 1)");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("binary_kl: q must lie in [0, 1]");
  }
  double d = 0.0;
  if (q > 0.0) d += q * std::log(q / p);
  if (q < 1.0) d += (1.0 - q) * std::log((1.0 - q) / (1.0 - p));
  return d;
}

double l1(std::span<const double> q, std::span<const double> p) {
  require_same_length(q.size(), p.size(), "l1");
  CompensatedSum sum;
  for (std::size_t i = 0; i < q.size(); ++i) {
    sum += std::fabs(q[i] - p[i]);
  }
  return sum.value();
}

double phi(double p) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::invalid_argument("phi: p must lie in [0, 1/2]");
  }
  if (p == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  // With d = 1 - 2p, log((1-p)/p) = 2 atanh(d), so phi = 2 atanh(d) / d.
  const double d = 1.0 - 2.0 * p;
  if (d < 1e-4) {
    const double d2 = d * d;
    return 2.0 * (1.0 + d2 / 3.0 + d2 * d2 / 5.0);
  }
  return 2.0 * std::atanh(d) / d;
}

bool pi_P_is_exact(const Distribution& p) { return p.is_uniform() || p.size() <= kPiExactLimit; }

double pi_P(const Distribution& p) {
  const std::size_t k = p.size();
  if (p.is_uniform()) {
    if (k % 2 == 0) return 0.5;
    return static_cast<double>(k / 2) / static_cast<double>(k);
  }
  if (k <= 20) return pi_exhaustive(p.probs());
  if (k <= kPiExactLimit) return pi_meet_in_the_middle(p.probs());
  return 0.5;
}

}  // namespace kltail
