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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "kltail/constants.hpp"
#include "kltail/rng.hpp"
#include "kltail/sampling.hpp"
#include "kltail/special.hpp"

namespace kltail {
namespace {

double binomial_log_pmf(std::uint64_t n, double p, std::uint64_t x) {
  return log_binomial(n, x) + x * std::log(p) + (n - x) * std::log1p(-p);
}

double poisson_log_pmf(double lambda, std::uint64_t x) {
  return -lambda + x * std::log(lambda) - log_factorial(x);
}

// Pearson statistic over cells with expected count >= 5, the rest pooled.
// Returns the upper-tail probability.
template <typename LogPmf>
double chi_square_pvalue(const std::vector<std::uint64_t>& hist, std::uint64_t draws, LogPmf log_pmf) {
  double stat = 0.0, pooled_obs = 0.0, pooled_exp = 0.0, covered = 0.0;
  int cells = 0;
  for (std::uint64_t x = 0; x < hist.size(); ++x) {
    const double e = draws * std::exp(log_pmf(x));
    covered += e;
    if (e >= 5.0) {
      stat += (hist[x] - e) * (hist[x] - e) / e;
      ++cells;
    } else {
      pooled_obs += hist[x];
      pooled_exp += e;
    }
  }
  pooled_exp += draws - covered;
  if (pooled_exp > 0) {
    stat += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++cells;
  }
  return 1.0 - chi2_cdf(stat, cells - 1);
}

struct BinCase {
  std::uint64_t n;
  double p;
};

TEST(Binomial, ExactLawAcrossRegimes) {
  // inversion, BTRS, and the reflected p > 1/2 path
  for (const auto c : {BinCase{20, 0.3}, BinCase{500, 0.05}, BinCase{1000, 0.3},
                       BinCase{100000, 0.5}, BinCase{400, 0.93}}) {
    PhiloxStream rng(100 + c.n, 0);
    const std::uint64_t draws = 200000;
    std::vector<std::uint64_t> hist(c.n + 1);
    for (std::uint64_t i = 0; i < draws; ++i) ++hist[sample_binomial(c.n, c.p, rng)];
    const double pv = chi_square_pvalue(hist, draws, [&](std::uint64_t x) {
      return binomial_log_pmf(c.n, c.p, x);
    });
    EXPECT_GT(pv, 1e-4) << "n=" << c.n << " p=" << c.p;
  }
}

TEST(Binomial, Edges) {
  PhiloxStream rng(1, 0);
  EXPECT_EQ(sample_binomial(0, 0.5, rng), 0u);
  EXPECT_EQ(sample_binomial(10, 0.0, rng), 0u);
  EXPECT_EQ(sample_binomial(10, 1.0, rng), 10u);
  EXPECT_THROW(sample_binomial(10, 1.5, rng), std::invalid_argument);
}

TEST(Poisson, ExactLawAcrossRegimes) {
  for (double lambda : {0.7, 12.0, 31.0, 3333.3}) {
    PhiloxStream rng(7, static_cast<std::uint64_t>(lambda * 10));
    const std::uint64_t draws = 200000;
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(lambda * 3 + 40));
    for (std::uint64_t i = 0; i < draws; ++i) {
      const auto x = sample_poisson(lambda, rng);
      if (x < hist.size()) ++hist[x];
    }
    const double pv = chi_square_pvalue(hist, draws, [&](std::uint64_t x) {
      return poisson_log_pmf(lambda, x);
    });
    EXPECT_GT(pv, 1e-4) << "lambda=" << lambda;
  }
}

TEST(Multinomial, Degenerate) {
  auto p = Distribution::from_probs({1 - 3e-12, 1e-12, 1e-12, 1e-12});
  PhiloxStream rng(2, 0);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_multinomial(p, 50, rng).counts()[0], 50u);
}

TEST(Multinomial, MeanAndCovariance) {
  auto p = Distribution::from_probs({0.1, 0.2, 0.3, 0.4});
  const std::uint64_t n = 30, trials = 100000;
  std::vector<std::vector<double>> rows(trials, std::vector<double>(4));
  PhiloxStream rng(3, 0);
  std::vector<std::uint64_t> c(4);
  for (auto& row : rows) {
    sample_multinomial(p, n, rng, c);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      total += c[i];
      row[i] = static_cast<double>(c[i]) / n;
    }
    ASSERT_EQ(total, n);
  }
  std::vector<double> mean(4);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < 4; ++i) mean[i] += row[i] / trials;
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const double se = std::sqrt(p[i] * (1 - p[i]) / n / trials);
    EXPECT_NEAR(mean[i], p[i], 4 * se) << i;
    for (std::size_t j = i + 1; j < 4; ++j) {
      double s = 0.0, s2 = 0.0;
      for (const auto& row : rows) {
        const double z = (row[i] - mean[i]) * (row[j] - mean[j]);
        s += z;
        s2 += z * z;
      }
      const double cov = s / trials;
      const double se_cov = std::sqrt((s2 / trials - cov * cov) / trials);
      EXPECT_NEAR(cov, -p[i] * p[j] / n, 5 * se_cov) << i << "," << j;
      EXPECT_LT(cov / std::sqrt(p[i] * (1 - p[i]) * p[j] * (1 - p[j])) , 0.0);
    }
  }
}

TEST(Multinomial, MarginalsAreBinomial) {
  auto p = Distribution::from_probs({0.05, 0.15, 0.3, 0.5});
  const std::uint64_t n = 40, trials = 1'000'000;
  std::vector<std::vector<std::uint64_t>> hist(4, std::vector<std::uint64_t>(n + 1));
  PhiloxStream rng(4, 0);
  std::vector<std::uint64_t> c(4);
  for (std::uint64_t t = 0; t < trials; ++t) {
    sample_multinomial(p, n, rng, c);
    for (std::size_t i = 0; i < 4; ++i) ++hist[i][c[i]];
  }
  for (std::size_t i = 0; i < 4; ++i) {
    double emp = 0.0, ref = 0.0, ks = 0.0;
    for (std::uint64_t x = 0; x <= n; ++x) {
      emp += static_cast<double>(hist[i][x]) / trials;
      ref += std::exp(binomial_log_pmf(n, p[i], x));
      ks = std::max(ks, std::fabs(emp - ref));
    }
    EXPECT_LT(ks, 0.01) << i;
  }
}

TEST(RandomInterior, OnSimplex) {
  PhiloxStream rng(9, 0);
  for (int i = 0; i < 100; ++i) {
    auto p = random_interior_distribution(5, rng);
    EXPECT_TRUE(p.strictly_interior());
  }
}

}  // namespace
}  // namespace kltail
