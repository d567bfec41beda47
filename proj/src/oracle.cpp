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

#include "kltail/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "kltail/constants.hpp"
#include "kltail/divergence.hpp"
#include "kltail/special.hpp"

namespace kltail {

namespace {

void check_nk(std::uint64_t n, std::uint64_t k, const char* who) {
  if (n < 1 || k < 2) {
    throw std::invalid_argument(std::string(who) + ": need n >= 1 and k >= 2");
  }
}

void check_interior(const Distribution& p, const char* who) {
  if (!p.strictly_interior()) {
    throw std::invalid_argument(std::string(who) + ": distribution must be strictly interior");
  }
}

struct ScanSummary {
  std::uint64_t types = 0;
  double log_mass = 0.0;
};

// Visits every type of (n, k) with its multinomial pmf and empirical law.
template <typename Visit>
ScanSummary scan_types(const Distribution& p, std::uint64_t n, std::uint64_t cap, Visit&& visit) {
  const std::size_t k = p.size();
  std::vector<double> log_fact(n + 1);
  for (std::uint64_t c = 0; c <= n; ++c) log_fact[c] = log_factorial(c);
  std::vector<double> log_p(k);
  for (std::size_t i = 0; i < k; ++i) log_p[i] = std::log(p[i]);

  const double dn = static_cast<double>(n);
  std::vector<double> law(k);
  CompensatedSum mass;
  TypeEnumerator types(n, k, cap);
  ScanSummary summary;
  do {
    const auto counts = types.counts();
    double log_pmf = log_fact[n];
    for (std::size_t i = 0; i < k; ++i) {
      const auto c = counts[i];
      law[i] = static_cast<double>(c) / dn;
      if (c > 0) log_pmf += static_cast<double>(c) * log_p[i] - log_fact[c];
    }
    const double pmf = std::exp(log_pmf);
    mass += pmf;
    visit(counts, pmf, std::span<const double>(law));
    ++summary.types;
  } while (types.advance());
  summary.log_mass = std::log(mass.value());
  return summary;
}

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

template <typename Statistic>
std::vector<ExactTail> exact_tail_grid(const Distribution& p, std::uint64_t n,
                                       std::span<const double> eps_grid, std::uint64_t cap,
                                       Statistic&& statistic) {
  std::vector<CompensatedSum> sums(eps_grid.size());
  const auto summary = scan_types(p, n, cap, [&](auto, double pmf, std::span<const double> law) {
    const double value = statistic(law);
    for (std::size_t e = 0; e < eps_grid.size(); ++e) {
      if (value >= eps_grid[e]) sums[e] += pmf;
    }
  });
  std::vector<ExactTail> tails(eps_grid.size());
  for (std::size_t e = 0; e < eps_grid.size(); ++e) {
    tails[e].probability = clamp01(sums[e].value());
    tails[e].types_enumerated = summary.types;
    tails[e].log_mass_check = summary.log_mass;
  }
  return tails;
}

}  // namespace

std::uint64_t enumeration_cap() {
  if (const char* env = std::getenv(kEnumerationCapEnv)) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      return value;
    }
  }
  return kDefaultEnumerationCap;
}

std::vector<DeskCell> desk_grid(std::uint64_t n_max, std::uint64_t k_max) {
  std::vector<DeskCell> cells;
  for (std::uint64_t k = 2; k <= k_max; ++k) {
    for (std::uint64_t n = 1; n <= n_max; ++n) cells.push_back({n, k});
  }
  return cells;
}

std::uint64_t type_count(std::uint64_t n, std::uint64_t k) {
  if (k == 0) return 0;
  // C(n+k-1, r) with r = min(k-1, n), built as a running product that stays integral.
  const std::uint64_t r = std::min(k - 1, n);
  const std::uint64_t top = n + k - 1;
  __extension__ using u128 = unsigned __int128;
  u128 acc = 1;
  for (std::uint64_t j = 1; j <= r; ++j) {
    acc = acc * (top - r + j) / j;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

EnumerationLimitError::EnumerationLimitError(std::uint64_t count, std::uint64_t cap)
    : std::runtime_error("enumeration refused: " + std::to_string(count) +
                         " types exceed the cap of " + std::to_string(cap) + " (set " +
                         kEnumerationCapEnv + " to raise it)"),
      count_(count),
      cap_(cap) {}

TypeEnumerator::TypeEnumerator(std::uint64_t n, std::uint64_t k, std::uint64_t cap)
    : counts_(k, 0), total_(type_count(n, k)) {
  if (k < 1) {
    throw std::invalid_argument("TypeEnumerator: k must be >= 1");
  }
  if (total_ > cap) {
    throw EnumerationLimitError(total_, cap);
  }
  counts_[0] = n;
}

bool TypeEnumerator::advance() {
  const std::size_t k = counts_.size();
  // Take one unit from the first nonzero coordinate (other than the last),
  // push it one slot right and return the remainder to slot 0.
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (counts_[i] > 0) {
      const std::uint64_t v = counts_[i];
      counts_[i] = 0;
      counts_[0] = v - 1;
      counts_[i + 1] += 1;
      return true;
    }
  }
  return false;
}

std::vector<CountVector> enumerate_types(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  check_nk(n, k, "enumerate_types");
  TypeEnumerator types(n, k, cap);
  std::vector<CountVector> all;
  all.reserve(types.total());
  do {
    all.push_back(CountVector::from_counts({types.counts().begin(), types.counts().end()}));
  } while (types.advance());
  return all;
}

std::vector<ExactTail> exact_tail_kl(const Distribution& p, std::uint64_t n,
                                     std::span<const double> eps_grid, std::uint64_t cap) {
  check_nk(n, p.size(), "exact_tail_kl");
  check_interior(p, "exact_tail_kl");
  return exact_tail_grid(p, n, eps_grid, cap,
                         [&](std::span<const double> law) { return kl(law, p); });
}

ExactTail exact_tail_kl(const Distribution& p, std::uint64_t n, double eps, std::uint64_t cap) {
  return exact_tail_kl(p, n, std::span<const double>(&eps, 1), cap).front();
}

std::vector<ExactTail> exact_tail_l1(const Distribution& p, std::uint64_t n,
                                     std::span<const double> eps_grid, std::uint64_t cap) {
  check_nk(n, p.size(), "exact_tail_l1");
  check_interior(p, "exact_tail_l1");
  return exact_tail_grid(p, n, eps_grid, cap,
                         [&](std::span<const double> law) { return l1(law, p.probs()); });
}

ExactTail exact_tail_l1(const Distribution& p, std::uint64_t n, double eps, std::uint64_t cap) {
  return exact_tail_l1(p, n, std::span<const double>(&eps, 1), cap).front();
}

ExactMoments exact_mean_var_kl(const Distribution& p, std::uint64_t n, std::uint64_t cap) {
  check_nk(n, p.size(), "exact_mean_var_kl");
  check_interior(p, "exact_mean_var_kl");
  // Weighted incremental mean/variance (West 1979) in extended precision.
  long double weight = 0.0L;
  long double mean = 0.0L;
  long double m2 = 0.0L;
  scan_types(p, n, cap, [&](auto, double pmf, std::span<const double> law) {
    if (pmf == 0.0) return;
    const long double x = kl(law, p);
    const long double w = pmf;
    weight += w;
    const long double delta = x - mean;
    const long double r = delta * w / weight;
    mean += r;
    m2 += (weight - w) * delta * r;
  });
  ExactMoments m;
  m.mean = static_cast<double>(mean);
  m.var = static_cast<double>(m2 / weight);
  return m;
}

QuadraticMoments exact_quadratic_moments(const Distribution& p, std::uint64_t n, std::size_t i,
                                         std::size_t j) {
  if (i == j) {
    throw std::invalid_argument("exact_quadratic_moments: i and j must differ");
  }
  if (i >= p.size() || j >= p.size()) {
    throw std::invalid_argument("exact_quadratic_moments: index out of range");
  }
  if (n < 1) {
    throw std::invalid_argument("exact_quadratic_moments: n must be >= 1");
  }
  const double pi = p[i];
  const double pj = p[j];
  const double dn = static_cast<double>(n);
  const double n3 = dn * dn * dn;
  QuadraticMoments m;
  m.xi_sq = (1.0 - pi) * (1.0 + 2.0 * (dn - 3.0) * pi * (1.0 - pi)) / (n3 * pi);
  m.xi_xj = (2.0 * (pi + pj) - 1.0 + 2.0 * (dn - 3.0) * pi * pj) / n3;
  return m;
}

EnumeratedQuadraticMoments enumerate_quadratic_moments(const Distribution& p, std::uint64_t n,
                                                       std::size_t i, std::size_t j,
                                                       std::uint64_t cap) {
  if (i == j || i >= p.size() || j >= p.size()) {
    throw std::invalid_argument("enumerate_quadratic_moments: need distinct in-range indices");
  }
  check_nk(n, p.size(), "enumerate_quadratic_moments");
  check_interior(p, "enumerate_quadratic_moments");
  const std::size_t k = p.size();
  std::vector<long double> log_fact(n + 1);
  for (std::uint64_t c = 0; c <= n; ++c) log_fact[c] = std::lgammal(static_cast<long double>(c) + 1);
  std::vector<long double> log_p(k);
  for (std::size_t t = 0; t < k; ++t) log_p[t] = std::log(static_cast<long double>(p[t]));

  const long double dn = static_cast<long double>(n);
  const long double pi = p[i];
  const long double pj = p[j];
  long double sum_x = 0.0L;
  long double sum_x2 = 0.0L;
  long double sum_xy = 0.0L;
  TypeEnumerator types(n, k, cap);
  do {
    const auto counts = types.counts();
    long double log_pmf = log_fact[n];
    for (std::size_t t = 0; t < k; ++t) {
      if (counts[t] > 0) log_pmf += static_cast<long double>(counts[t]) * log_p[t] - log_fact[counts[t]];
    }
    const long double pmf = std::exp(log_pmf);
    const long double di = static_cast<long double>(counts[i]) / dn - pi;
    const long double dj = static_cast<long double>(counts[j]) / dn - pj;
    const long double xi = di * di / pi - (1.0L - pi) / dn;
    const long double xj = dj * dj / pj - (1.0L - pj) / dn;
    sum_x += pmf * xi;
    sum_x2 += pmf * xi * xi;
    sum_xy += pmf * xi * xj;
  } while (types.advance());
  return {static_cast<double>(sum_x), static_cast<double>(sum_x2), static_cast<double>(sum_xy)};
}

QuadraticMoments verified_quadratic_moments(const Distribution& p, std::uint64_t n, std::size_t i,
                                            std::size_t j, double rel_tol) {
  const auto closed = exact_quadratic_moments(p, n, i, j);
  const auto enumerated = enumerate_quadratic_moments(p, n, i, j);
  auto rel = [](double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
  };
  if (rel(closed.xi_sq, enumerated.xi_sq) > rel_tol ||
      rel(closed.xi_xj, enumerated.xi_xj) > rel_tol) {
    throw std::runtime_error("quadratic moment closed form disagrees with enumeration at n = " +
                             std::to_string(n));
  }
  return closed;
}

double binomial_exp_kl_moment(double p, std::uint64_t n, unsigned i) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("binomial_exp_kl_moment: p must lie in (0, 1)");
  }
  if (n < 1) {
    throw std::invalid_argument("binomial_exp_kl_moment: n must be >= 1");
  }
  const double dn = static_cast<double>(n);
  CompensatedSum sum;
  for (std::uint64_t l = 0; l <= n; ++l) {
    const double frac = static_cast<double>(l) / dn;
    const double rest = static_cast<double>(n - l) / dn;
    double log_term = log_binomial(n, l);
    if (l > 0) log_term += static_cast<double>(l) * std::log(frac);
    if (l < n) log_term += static_cast<double>(n - l) * std::log(rest);
    if (i > 0) {
      if (l == n) continue;  // (1 - l/n)^{i/2} = 0
      log_term += 0.5 * i * std::log(rest);
    }
    sum += std::exp(log_term);
  }
  return sum.value();
}

double binomial_exp_kl_moment_bound(std::uint64_t n, unsigned i) {
  return wallis_h(static_cast<int>(i)) * std::numbers::e * std::sqrt(static_cast<double>(n)) /
         (2.0 * std::numbers::pi);
}

}  // namespace kltail
