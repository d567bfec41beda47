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

#include "kltail/distribution.hpp"
#include "kltail/rng.hpp"

namespace kltail {

/// Binomial(n, p). Inversion when min(p, 1-p) n <= 30, otherwise Hormann's
/// BTRS transformed rejection with the acceptance test done on exact
/// log-factorials, so the output law is exactly binomial.
std::uint64_t sample_binomial(std::uint64_t n, double p, PhiloxStream& rng);

/// Poisson(lambda). Inversion for lambda <= 30, otherwise Hormann's PTRS with
/// an exact log-pmf acceptance test.
std::uint64_t sample_poisson(double lambda, PhiloxStream& rng);

/// Multinomial(n, P) by sequential conditional binomials; writes into `counts`
/// (size k).
void sample_multinomial(const Distribution& p, std::uint64_t n, PhiloxStream& rng,
                        std::span<std::uint64_t> counts);
CountVector sample_multinomial(const Distribution& p, std::uint64_t n, PhiloxStream& rng);

/// Uniform draw from the open simplex (Dirichlet(1, ..., 1)); every entry > 0.
Distribution random_interior_distribution(std::size_t k, PhiloxStream& rng);

}  // namespace kltail
