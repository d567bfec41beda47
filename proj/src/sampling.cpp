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

#include "kltail/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kltail/constants.hpp"
#include "kltail/special.hpp"

namespace kltail {

namespace {

constexpr double kInversionLimit = 30.0;

std::uint64_t binomial_inversion(std::uint64_t n, double p, PhiloxStream& rng) {
  const double q = 1.0 - p;
  const double ratio = p / q;
  double f = std::exp(static_cast<double>(n) * std::log1p(-p));
  double u = rng.uniform();
  std::uint64_t k = 0;
  while (u > f) {
    u -= f;
    ++k;
    if (k > n) return n;  // rounding residue in the upper tail
    f *= ratio * static_cast<double>(n - k + 1) / static_cast<double>(k);
    if (f == 0.0) return k;
  }
  return k;
}

// BTRS, requires p <= 1/2 and n p >= 10.
std::uint64_t binomial_btrs(std::uint64_t n, double p, PhiloxStream& rng) {
  const double dn = static_cast<double>(n);
  const double stddev = std::sqrt(dn * p * (1.0 - p));
  const double b = 1.15 + 2.53 * stddev;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = dn * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double log_r = std::log(p / (1.0 - p));
  const double alpha = (2.83 + 5.1 / b) * stddev;
  const double m = std::floor((dn + 1.0) * p);
  const double log_f_mode = -log_factorial(static_cast<std::uint64_t>(m)) -
                            log_factorial(n - static_cast<std::uint64_t>(m));

  while (true) {
    const double u = rng.uniform() - 0.5;
    double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + c);
    if (kd < 0.0 || kd > dn) continue;
    const auto k = static_cast<std::uint64_t>(kd);
    if (us >= 0.07 && v <= v_r) return k;
    v = std::log(v * alpha / (a / (us * us) + b));
    // log f(k) - log f(m) with f(x) proportional to r^x / (x! (n-x)!)
    const double log_ratio =
        (kd - m) * log_r - log_factorial(k) - log_factorial(n - k) - log_f_mode;
    if (v <= log_ratio) return k;
  }
}

std::uint64_t poisson_inversion(double lambda, PhiloxStream& rng) {
  double f = std::exp(-lambda);
  double u = rng.uniform();
  std::uint64_t k = 0;
  while (u > f) {
    u -= f;
    ++k;
    f *= lambda / static_cast<double>(k);
    if (f == 0.0) return k;
  }
  return k;
}

// PTRS, requires lambda >= 10.
std::uint64_t poisson_ptrs(double lambda, PhiloxStream& rng) {
  const double slam = std::sqrt(lambda);
  const double log_lambda = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);

  while (true) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform_open();
    const double us = 0.5 - std::fabs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kd);
    if (kd < 0.0 || (us < 0.013 && v > us)) continue;
    const auto k = static_cast<std::uint64_t>(kd);
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -lambda + kd * log_lambda - log_factorial(k)) {
      return k;
    }
  }
}

}  // namespace

std::uint64_t sample_binomial(std::uint64_t n, double p, PhiloxStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("sample_binomial: p must lie in [0, 1]");
  }
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - sample_binomial(n, 1.0 - p, rng);
  if (static_cast<double>(n) * p <= kInversionLimit) return binomial_inversion(n, p, rng);
  return binomial_btrs(n, p, rng);
}

std::uint64_t sample_poisson(double lambda, PhiloxStream& rng) {
  if (!(lambda >= 0.0) || std::isinf(lambda)) {
    throw std::invalid_argument("sample_poisson: lambda must be finite and >= 0");
  }
  if (lambda == 0.0) return 0;
  if (lambda <= kInversionLimit) return poisson_inversion(lambda, rng);
  return poisson_ptrs(lambda, rng);
}

void sample_multinomial(const Distribution& p, std::uint64_t n, PhiloxStream& rng,
                        std::span<std::uint64_t> counts) {
  const std::size_t k = p.size();
  if (counts.size() != k) {
    throw std::invalid_argument("sample_multinomial: counts has the wrong length");
  }
  std::fill(counts.begin(), counts.end(), 0);
  // Tail masses sum_{j >= i} p_j, accumulated from the end.
  double tail = 0.0;
  std::vector<double> tails(k);
  for (std::size_t i = k; i-- > 0;) {
    tail += p[i];
    tails[i] = tail;
  }
  std::uint64_t remaining = n;
  for (std::size_t i = 0; i + 1 < k && remaining > 0; ++i) {
    const double conditional = tails[i] > 0.0 ? std::min(1.0, p[i] / tails[i]) : 0.0;
    const auto c = sample_binomial(remaining, conditional, rng);
    counts[i] = c;
    remaining -= c;
  }
  counts[k - 1] += remaining;
}

CountVector sample_multinomial(const Distribution& p, std::uint64_t n, PhiloxStream& rng) {
  std::vector<std::uint64_t> counts(p.size());
  sample_multinomial(p, n, rng, counts);
  return CountVector::from_counts(std::move(counts));
}

Distribution random_interior_distribution(std::size_t k, PhiloxStream& rng) {
  std::vector<double> w(k);
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(rng.uniform_open());
    total += x;
  }
  for (double& x : w) x /= total;
  return Distribution::from_probs(std::move(w));
}

}  // namespace kltail
