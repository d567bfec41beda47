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

#include <vector>

#include "kltail/distribution.hpp"

namespace kltail {
namespace {

TEST(Distribution, Validation) {
  EXPECT_NO_THROW(Distribution::from_probs({0.25, 0.75}));
  EXPECT_THROW(Distribution::from_probs({1.0}), DistributionError);
  try {
    Distribution::from_probs({0.5, -0.1, 0.6});
    FAIL();
  } catch (const DistributionError& e) {
    EXPECT_EQ(e.index(), 1);
  }
  try {
    Distribution::from_probs({0.5, 0.4});
    FAIL();
  } catch (const DistributionError& e) {
    EXPECT_EQ(e.index(), -1);
  }
}

TEST(Distribution, UniformAndFlags) {
  auto u = Distribution::uniform(7);
  EXPECT_EQ(u.size(), 7u);
  EXPECT_TRUE(u.is_uniform());
  EXPECT_TRUE(u.strictly_interior());
  EXPECT_DOUBLE_EQ(u[3], 1.0 / 7.0);
  auto p = Distribution::from_probs({0.0, 0.5, 0.5});
  EXPECT_FALSE(p.strictly_interior());
  EXPECT_FALSE(p.is_uniform());
  EXPECT_EQ(p.min_prob(), 0.0);
}

TEST(Distribution, Parse) {
  auto u = parse_distribution("uniform", 4);
  EXPECT_TRUE(u.is_uniform());
  EXPECT_EQ(u.size(), 4u);
  auto p = parse_distribution("0.2,0.3,0.5");
  EXPECT_DOUBLE_EQ(p[1], 0.3);
  auto q = parse_distribution("[0.5, 0.5]", 2);
  EXPECT_EQ(q.size(), 2u);
  EXPECT_THROW(parse_distribution("uniform"), DistributionError);
  EXPECT_THROW(parse_distribution("0.5,abc"), DistributionError);
  EXPECT_THROW(parse_distribution("0.5,0.5", 3), DistributionError);
}

TEST(CountVector, EmpiricalLaw) {
  auto c = CountVector::from_counts({1, 3, 0});
  EXPECT_EQ(c.n(), 4u);
  auto law = c.empirical_law();
  EXPECT_DOUBLE_EQ(law[1], 0.75);
  EXPECT_DOUBLE_EQ(law[2], 0.0);
  EXPECT_THROW(CountVector::from_counts({0, 0}), DistributionError);
}

}  // namespace
}  // namespace kltail
