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

#include <algorithm>
#include <cmath>
#include <vector>

#include "kltail/montecarlo.hpp"
#include "kltail/oracle.hpp"
#include "kltail/rng.hpp"
#include "kltail/sampling.hpp"
#include "kltail/special.hpp"

namespace kltail {
namespace {

McOptions opts(std::uint64_t trials, std::uint64_t seed, unsigned workers = 1) {
  McOptions o;
  o.trials = trials;
  o.seed = seed;
  o.workers = workers;
  return o;
}

TEST(Wilson, Basics) {
  const auto a = wilson_interval(0, 100, 0.99);
  EXPECT_EQ(a.low, 0.0);
  EXPECT_GT(a.high, 0.0);
  const auto b = wilson_interval(100, 100, 0.99);
  EXPECT_EQ(b.high, 1.0);
  const auto c = wilson_interval(50, 100, 0.95);
  EXPECT_NEAR(c.low, 0.4038, 1e-4);
  EXPECT_NEAR(c.high, 0.5962, 1e-4);
  EXPECT_THROW(wilson_interval(3, 2, 0.99), std::invalid_argument);
}

TEST(McTail, ZeroEpsIsCertain) {
  const auto e = mc_tail_kl(Distribution::from_probs({0.2, 0.8}), 5, 0.0, opts(1000, 1));
  EXPECT_EQ(e.p_hat, 1.0);
  EXPECT_LE(e.ci_low, e.p_hat);
  EXPECT_GE(e.ci_high, e.p_hat);
}

TEST(McTail, BinaryTieCase) {
  const auto e = mc_tail_kl(Distribution::uniform(2), 7, std::log(2.0), opts(1'000'000, 2));
  EXPECT_LE(e.ci_low, 1.0 / 64);
  EXPECT_GE(e.ci_high, 1.0 / 64);
}

TEST(McTailL1, Examples) {
  const auto u = Distribution::uniform(2);
  EXPECT_EQ(mc_tail_l1(u, 6, 0.0, opts(1000, 3)).p_hat, 1.0);
  EXPECT_EQ(mc_tail_l1(u, 6, 2.5, opts(1000, 3)).p_hat, 0.0);
  const auto e = mc_tail_l1(u, 2, 1.0, opts(1'000'000, 4));
  EXPECT_LE(e.ci_low, 0.5);
  EXPECT_GE(e.ci_high, 0.5);
}

TEST(McTail, WorkerCountDoesNotMatter) {
  const auto p = Distribution::from_probs({0.1, 0.3, 0.6});
  const std::vector<double> grid = {0.0, 0.05, 0.1, 0.3};
  const auto a = mc_tail_kl(p, 25, grid, opts(20000, 9, 1));
  const auto b = mc_tail_kl(p, 25, grid, opts(20000, 9, 8));
  const auto c = mc_tail_kl(p, 25, grid, opts(20000, 9, 3));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(a[i].hits, b[i].hits);
    EXPECT_EQ(a[i].hits, c[i].hits);
    EXPECT_EQ(a[i].ci_low, b[i].ci_low);
  }
  const auto s1 = mc_kl_samples(p, 25, opts(5000, 9, 1));
  const auto s8 = mc_kl_samples(p, 25, opts(5000, 9, 8));
  EXPECT_EQ(s1, s8);
}

TEST(McTail, WilsonCoverage) {
  const auto p = Distribution::from_probs({0.2, 0.3, 0.5});
  const std::uint64_t n = 10;
  const double eps = 0.15;
  const double truth = exact_tail_kl(p, n, eps).probability;
  int covered = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto e = mc_tail_kl(p, n, eps, opts(4000, 1000 + s));
    covered += (e.ci_low <= truth && truth <= e.ci_high) ? 1 : 0;
  }
  EXPECT_GE(covered, 193);
}

TEST(McMeanVar, ConstantStatistic) {
  const auto e = mc_mean_var_kl(Distribution::uniform(2), 1, opts(1000, 5));
  EXPECT_EQ(e.var, 0.0);
  EXPECT_NEAR(e.mean, std::log(2.0), 1e-15);
}

TEST(McMeanVar, JackknifeOnKnownSample) {
  std::vector<double> v = {1.0, 2.0, 4.0, 7.0};
  const auto e = mean_var_from_samples(v);
  EXPECT_DOUBLE_EQ(e.mean, 3.5);
  EXPECT_DOUBLE_EQ(e.var, 7.0);
  // Brute-force leave-one-out.
  std::vector<double> loo;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::vector<double> w;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j != i) w.push_back(v[j]);
    }
    double m = 0;
    for (double x : w) m += x / w.size();
    double s = 0;
    for (double x : w) s += (x - m) * (x - m);
    loo.push_back(s / (w.size() - 1));
  }
  double lm = 0;
  for (double x : loo) lm += x / loo.size();
  double d = 0;
  for (double x : loo) d += (x - lm) * (x - lm);
  EXPECT_NEAR(e.var_se, std::sqrt(3.0 / 4.0 * d), 1e-12);
}

TEST(McMeanVar, MatchesOracleOnDeskGrid) {
  PhiloxStream rng(77, 0);
  for (const auto& cell : desk_grid(12, 4)) {
    if (cell.n % 3 != 0) continue;
    const auto p = random_interior_distribution(cell.k, rng);
    const auto exact = exact_mean_var_kl(p, cell.n);
    const auto est = mc_mean_var_kl(p, cell.n, opts(50000, cell.n * 10 + cell.k));
    EXPECT_NEAR(est.var, exact.var, 5 * est.var_se) << "n=" << cell.n << " k=" << cell.k;
    EXPECT_NEAR(est.mean, exact.mean, 5 * est.mean_se);
  }
}

TEST(McMeanVar, SecondBranchScaling) {
  const auto u = Distribution::uniform(8);
  std::vector<double> scaled;
  for (std::uint64_t n : {200u, 400u, 800u}) {
    const auto e = mc_mean_var_kl(u, n, opts(100000, n));
    scaled.push_back(e.var * n * n / 8.0);
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  EXPECT_LE(*hi / *lo, 2.0);
}

TEST(McPoisson, SignedAndCentred) {
  const auto p = Distribution::uniform(3);
  const std::uint64_t n = 10000;
  auto d = mc_poisson_kl(p, n, opts(100000, 6));
  EXPECT_TRUE(std::any_of(d.begin(), d.end(), [](double x) { return x < 0.0; }));
  for (double& x : d) x *= std::sqrt(static_cast<double>(n));
  const auto e = mean_var_from_samples(d);
  EXPECT_NEAR(e.mean, 0.0, 5 * e.mean_se);
  EXPECT_GE(e.var, 0.8);
}

TEST(Ks, Statistic) {
  std::vector<double> s = {0.5};
  EXPECT_DOUBLE_EQ(ks_statistic(s, [](double x) { return x; }), 0.5);
  std::vector<double> ties = {0.2, 0.2, 0.2, 0.9};
  // Empirical CDF jumps to 3/4 at 0.2 against F(0.2) = 0.2.
  EXPECT_DOUBLE_EQ(ks_statistic(ties, [](double x) { return x; }), 0.55);
}

TEST(Gof, ChiSquareLimit) {
  EXPECT_LT(gof_chisq(Distribution::uniform(2), 10000, opts(100000, 11)).statistic, 0.02);
  EXPECT_LT(gof_chisq(Distribution::uniform(3), 10000, opts(100000, 12)).statistic, 0.02);
  const auto small = gof_chisq(Distribution::uniform(3), 5, opts(100000, 13));
  EXPECT_GT(small.statistic, 0.1);
  EXPECT_EQ(small.reference, "chi2(2)");
  EXPECT_DOUBLE_EQ(small.n_over_k, 5.0 / 3.0);
}

TEST(Gof, NormalLimitOfPoissonized) {
  EXPECT_LT(gof_normal_poisson(Distribution::uniform(3), 10000, opts(100000, 14)).statistic, 0.03);
  EXPECT_LT(gof_normal_poisson(Distribution::uniform(2), 10000, opts(100000, 15)).statistic, 0.03);
  EXPECT_GT(gof_poisson_chisq(Distribution::uniform(3), 10000, opts(100000, 16)).statistic, 0.1);
}

}  // namespace
}  // namespace kltail
