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

#include <cstddef>
#include <span>

#include "kltail/distribution.hpp"

namespace kltail {

/// D(Q || P) = sum_i q_i log(q_i / p_i), natural log, 0 log 0 = 0.
///
/// P must be strictly interior. Q is normally a probability vector (or an
/// empirical law); entries only need to be nonnegative, so the unnormalized
/// Poissonized law is accepted and yields a signed value.
double kl(std::span<const double> q, const Distribution& p);
double kl(const CountVector& counts, const Distribution& p);

/// Binary divergence D((q, 1-q) || (p, 1-p)) for q in [0, 1], p in (0, 1).
double binary_kl(double q, double p);

/// sum_i |q_i - p_i|.
double l1(std::span<const double> q, std::span<const double> p);

/// phi(p) = log((1-p)/p) / (1-2p) on [0, 1/2], phi(1/2) = 2, phi(0) = +inf.
double phi(double p);

/// Largest alphabet size for which pi_P is solved exactly for non-uniform P.
inline constexpr std::size_t kPiExactLimit = 40;

/// pi_P = max over subsets A of min(P(A), 1 - P(A)).
///
/// Exhaustive subset sums for k <= 20, meet-in-the-middle for k <= 40, closed
/// form for uniform P at any k. Otherwise returns 1/2, which overstates pi_P;
/// phi is nonincreasing so every bound built on phi(pi_P) stays valid.
double pi_P(const Distribution& p);

/// Whether pi_P(p) is the exact value rather than the conservative 1/2.
bool pi_P_is_exact(const Distribution& p);

}  // namespace kltail
