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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kltail/distribution.hpp"

namespace kltail {

struct McOptions {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
  double ci_level = 0.99;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for `hits` successes out of `trials` at two-sided
/// confidence `level`.
WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t trials, double level);

struct TailEstimate {
  double p_hat = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  double ci_level = 0.99;
};

/// Runs body(t) for t in [0, trials) on `workers` threads. Each trial must only
/// touch state indexed by t; results are then reduced in index order.
void for_each_trial(std::uint64_t trials, unsigned workers,
                    const std::function<void(std::uint64_t)>& body);

/// D(P_hat || P) for each trial; trial t draws from PhiloxStream(seed, t).
std::vector<double> mc_kl_samples(const Distribution& p, std::uint64_t n, const McOptions& options);
/// ||P_hat - P||_1 for each trial, same streams as mc_kl_samples.
std::vector<double> mc_l1_samples(const Distribution& p, std::uint64_t n, const McOptions& options);

/// Fraction of trials with D(P_hat || P) >= eps.
TailEstimate mc_tail_kl(const Distribution& p, std::uint64_t n, double eps,
                        const McOptions& options);
std::vector<TailEstimate> mc_tail_kl(const Distribution& p, std::uint64_t n,
                                     std::span<const double> eps_grid, const McOptions& options);

/// Fraction of trials with ||P_hat - P||_1 >= eps.
TailEstimate mc_tail_l1(const Distribution& p, std::uint64_t n, double eps,
                        const McOptions& options);
std::vector<TailEstimate> mc_tail_l1(const Distribution& p, std::uint64_t n,
                                     std::span<const double> eps_grid, const McOptions& options);

/// Tail estimate from precomputed per-trial values.
TailEstimate tail_from_samples(std::span<const double> values, double eps,
                               const McOptions& options);

struct MeanVarEstimate {
  double mean = 0.0;
  /// Unbiased sample variance.
  double var = 0.0;
  /// Jackknife standard errors.
  double mean_se = 0.0;
  double var_se = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

MeanVarEstimate mean_var_from_samples(std::span<const double> values);
MeanVarEstimate mc_mean_var_kl(const Distribution& p, std::uint64_t n, const McOptions& options);

/// Signed D(P_hat^Poi || P) draws with independent Poisson(n p_i) / n
/// coordinates. Never clamped.
std::vector<double> mc_poisson_kl(const Distribution& p, std::uint64_t n,
                                  const McOptions& options);

/// One-sample Kolmogorov-Smirnov sup-distance against `cdf`.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

struct GofReport {
  double statistic = 0.0;
  std::uint64_t sample_size = 0;
  std::string reference;
  std::uint64_t seed = 0;
  double n_over_k = 0.0;
};

/// KS distance of 2nD samples from the chi-square law with k-1 degrees.
GofReport gof_chisq(const Distribution& p, std::uint64_t n, const McOptions& options);
/// KS distance of sqrt(n) D^Poi samples from N(0, 1).
GofReport gof_normal_poisson(const Distribution& p, std::uint64_t n, const McOptions& options);
/// KS distance of 2nD^Poi samples from chi-square(k-1); the wrong scaling.
GofReport gof_poisson_chisq(const Distribution& p, std::uint64_t n, const McOptions& options);

}  // namespace kltail
