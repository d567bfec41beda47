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
#include <numbers>
#include <stdexcept>

#include "kltail/constants.hpp"
#include "quadrature.hpp"

namespace kltail {
namespace {

TEST(Wallis, FirstValues) {
  EXPECT_DOUBLE_EQ(wallis_c(0), std::numbers::pi);
  EXPECT_DOUBLE_EQ(wallis_c(1), 2.0);
  EXPECT_DOUBLE_EQ(wallis_c(2), std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(wallis_c(3), 4.0 / 3.0);
}

TEST(Wallis, MatchesQuadrature) {
  for (int m = 0; m <= 30; ++m) {
    const double q = testing::wallis_by_quadrature(m);
    EXPECT_NEAR(wallis_c(m) / q, 1.0, 1e-9) << "m=" << m;
  }
}

TEST(Wallis, RunningProducts) {
  EXPECT_DOUBLE_EQ(wallis_K(-1), 1.0);
  double prod = 1.0;
  for (int m = 0; m <= 40; ++m) {
    prod *= wallis_c(m);
    EXPECT_NEAR(wallis_K(m) / prod, 1.0, 1e-12) << "m=" << m;
  }
  // c_m c_{m-1} = 2 pi / m.
  for (int m = 1; m <= 100; ++m) {
    EXPECT_NEAR(wallis_c(m) * wallis_c(m - 1), 2.0 * std::numbers::pi / m, 1e-13);
  }
}

TEST(Wallis, HVariantSwapsSecondEntry) {
  EXPECT_DOUBLE_EQ(wallis_h(2), wallis_c(1));
  for (int m : {0, 1, 3, 4, 10}) EXPECT_DOUBLE_EQ(wallis_h(m), wallis_c(m));
  EXPECT_NEAR(log_wallis_H(5) - log_wallis_K(5), std::log(wallis_c(1) / wallis_c(2)), 1e-13);
}

TEST(Wallis, ProductEnvelope) {
  const double d0 = universal_constants().d0;
  for (int m = 1; m <= 200; ++m) {
    const double rhs = 0.5 * std::log(d0 / m) + 0.5 * m * std::log(2 * std::numbers::pi * std::numbers::e / m);
    EXPECT_LE(log_wallis_K(m), rhs) << "m=" << m;
  }
}

TEST(Wallis, TableGrowsOnDemand) {
  EXPECT_GT(wallis_c(5000), 0.0);
  EXPECT_NEAR(wallis_c(5000) * std::sqrt(5000.0), std::sqrt(2 * std::numbers::pi), 1e-3);
  auto t = wallis_table(10);
  EXPECT_GE(t->max_index, 10);
}

TEST(Universal, QuotedDecimals) {
  const auto& u = universal_constants();
  EXPECT_NEAR(u.C0, 3.1967, 1e-4);
  EXPECT_NEAR(u.C1, 2.9290, 1e-4);
  EXPECT_DOUBLE_EQ(u.d0, std::exp(3.0) / 2.0);
}

TEST(LogBinomial, FrozenValues) {
  // From exact integer binomials.
  EXPECT_NEAR(log_binomial(1030, 30), 133.0347653033612, 1e-11);
  EXPECT_NEAR(log_binomial(1000009, 9), 111.5378125414545, 1e-11);
  EXPECT_NEAR(log_binomial(200, 100), 135.7532360812785, 1e-11);
}

TEST(LogBinomial, EdgesAndSymmetry) {
  EXPECT_EQ(log_binomial(10, 0), 0.0);
  EXPECT_EQ(log_binomial(10, 10), 0.0);
  EXPECT_NEAR(log_binomial(10, 3), std::log(120.0), 1e-14);
  for (std::uint64_t a : {17u, 64u, 999u}) {
    for (std::uint64_t b = 0; b <= a; b += 7) {
      EXPECT_NEAR(log_binomial(a, b), log_binomial(a, a - b), 1e-10 * (1 + log_binomial(a, b)));
    }
  }
  EXPECT_THROW(log_binomial(3, 4), std::invalid_argument);
}

TEST(LogFactorial, SmallValues) {
  EXPECT_EQ(log_factorial(0), 0.0);
  EXPECT_NEAR(log_factorial(5), std::log(120.0), 1e-14);
}

}  // namespace
}  // namespace kltail
