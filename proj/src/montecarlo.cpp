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

#include "kltail/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "kltail/divergence.hpp"
#include "kltail/rng.hpp"
#include "kltail/sampling.hpp"
#include "kltail/special.hpp"

namespace kltail {

namespace {

void require_trials(std::uint64_t trials, std::uint64_t minimum, const char* who) {
  if (trials < minimum) {
    throw std::invalid_argument(std::string(who) + ": too few trials");
  }
}

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

template <typename Stat>
std::vector<double> per_trial(const Distribution& p, std::uint64_t n, const McOptions& options,
                              Stat stat) {
  std::vector<double> out(options.trials);
  for_each_trial(options.trials, options.workers, [&](std::uint64_t t) {
    PhiloxStream rng(options.seed, t);
    std::vector<std::uint64_t> counts(p.size());
    sample_multinomial(p, n, rng, counts);
    std::vector<double> q(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
      q[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
    }
    out[t] = stat(q);
  });
  return out;
}

std::vector<TailEstimate> tails(std::span<const double> values, std::span<const double> eps_grid,
                                const McOptions& options) {
  std::vector<TailEstimate> out;
  out.reserve(eps_grid.size());
  for (double eps : eps_grid) out.push_back(tail_from_samples(values, eps, options));
  return out;
}

}  // namespace

WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t trials, double level) {
  if (trials == 0 || hits > trials) {
    throw std::invalid_argument("wilson_interval: need 0 <= hits <= trials, trials > 0");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("wilson_interval: level must lie in (0, 1)");
  }
  const double z = normal_quantile(0.5 + 0.5 * level);
  const double m = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / m;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / m;
  const double centre = (p + z2 / (2.0 * m)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / m + z2 / (4.0 * m * m)) / denom;
  WilsonInterval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  // Pin the ends exactly at the boundary cases.
  if (hits == 0) ci.low = 0.0;
  if (hits == trials) ci.high = 1.0;
  ci.low = std::min(ci.low, p);
  ci.high = std::max(ci.high, p);
  return ci;
}

void for_each_trial(std::uint64_t trials, unsigned workers,
                    const std::function<void(std::uint64_t)>& body) {
  const std::uint64_t w = std::min<std::uint64_t>(resolve_workers(workers), std::max<std::uint64_t>(trials, 1));
  if (w <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  const std::uint64_t chunk = (trials + w - 1) / w;
  std::vector<std::exception_ptr> errors(w);
  for (std::uint64_t id = 0; id < w; ++id) {
    pool.emplace_back([&, id] {
      try {
        const std::uint64_t lo = id * chunk;
        const std::uint64_t hi = std::min(trials, lo + chunk);
        for (std::uint64_t t = lo; t < hi; ++t) body(t);
      } catch (...) {
        errors[id] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<double> mc_kl_samples(const Distribution& p, std::uint64_t n,
                                  const McOptions& options) {
  require_trials(options.trials, 1, "mc_kl_samples");
  if (n == 0) throw std::invalid_argument("mc_kl_samples: n must be >= 1");
  return per_trial(p, n, options, [&p](const std::vector<double>& q) { return kl(q, p); });
}

std::vector<double> mc_l1_samples(const Distribution& p, std::uint64_t n,
                                  const McOptions& options) {
  require_trials(options.trials, 1, "mc_l1_samples");
  if (n == 0) throw std::invalid_argument("mc_l1_samples: n must be >= 1");
  return per_trial(p, n, options,
                   [&p](const std::vector<double>& q) { return l1(q, p.probs()); });
}

TailEstimate tail_from_samples(std::span<const double> values, double eps,
                               const McOptions& options) {
  require_trials(values.size(), 1, "tail_from_samples");
  std::uint64_t hits = 0;
  for (double v : values) hits += v >= eps ? 1 : 0;
  TailEstimate est;
  est.trials = values.size();
  est.hits = hits;
  est.seed = options.seed;
  est.ci_level = options.ci_level;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(est.trials);
  const auto ci = wilson_interval(hits, est.trials, options.ci_level);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

TailEstimate mc_tail_kl(const Distribution& p, std::uint64_t n, double eps,
                        const McOptions& options) {
  return tail_from_samples(mc_kl_samples(p, n, options), eps, options);
}

std::vector<TailEstimate> mc_tail_kl(const Distribution& p, std::uint64_t n,
                                     std::span<const double> eps_grid, const McOptions& options) {
  return tails(mc_kl_samples(p, n, options), eps_grid, options);
}

TailEstimate mc_tail_l1(const Distribution& p, std::uint64_t n, double eps,
                        const McOptions& options) {
  return tail_from_samples(mc_l1_samples(p, n, options), eps, options);
}

std::vector<TailEstimate> mc_tail_l1(const Distribution& p, std::uint64_t n,
                                     std::span<const double> eps_grid, const McOptions& options) {
  return tails(mc_l1_samples(p, n, options), eps_grid, options);
}

MeanVarEstimate mean_var_from_samples(std::span<const double> values) {
  const std::size_t m = values.size();
  if (m < 2) throw std::invalid_argument("mean_var_from_samples: need at least 2 samples");
  const double dm = static_cast<double>(m);
  CompensatedSum s;
  for (double v : values) s += v;
  const double mean = s.value() / dm;
  CompensatedSum ss;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sum_sq = ss.value();

  MeanVarEstimate est;
  est.trials = m;
  est.mean = mean;
  est.var = sum_sq / (dm - 1.0);
  // The jackknife SE of the mean reduces to the usual s / sqrt(m).
  est.mean_se = std::sqrt(est.var / dm);
  if (m >= 3) {
    // Leave-one-out sum of squares: sum_sq - m/(m-1) d_i^2.
    std::vector<double> loo(m);
    CompensatedSum lsum;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = values[i] - mean;
      loo[i] = (sum_sq - dm / (dm - 1.0) * d * d) / (dm - 2.0);
      lsum += loo[i];
    }
    const double lmean = lsum.value() / dm;
    CompensatedSum dev;
    for (double v : loo) dev += (v - lmean) * (v - lmean);
    est.var_se = std::sqrt((dm - 1.0) / dm * dev.value());
  } else {
    est.var_se = std::numeric_limits<double>::quiet_NaN();
  }
  return est;
}

MeanVarEstimate mc_mean_var_kl(const Distribution& p, std::uint64_t n, const McOptions& options) {
  require_trials(options.trials, 2, "mc_mean_var_kl");
  auto est = mean_var_from_samples(mc_kl_samples(p, n, options));
  est.seed = options.seed;
  return est;
}

std::vector<double> mc_poisson_kl(const Distribution& p, std::uint64_t n,
                                  const McOptions& options) {
  require_trials(options.trials, 1, "mc_poisson_kl");
  if (n == 0) throw std::invalid_argument("mc_poisson_kl: n must be >= 1");
  std::vector<double> out(options.trials);
  const double dn = static_cast<double>(n);
  for_each_trial(options.trials, options.workers, [&](std::uint64_t t) {
    PhiloxStream rng(options.seed, t);
    std::vector<double> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i] = static_cast<double>(sample_poisson(dn * p[i], rng)) / dn;
    }
    out[t] = kl(q, p);
  });
  return out;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
  }
  return std::clamp(d, 0.0, 1.0);
}

GofReport gof_chisq(const Distribution& p, std::uint64_t n, const McOptions& options) {
  auto samples = mc_kl_samples(p, n, options);
  const double two_n = 2.0 * static_cast<double>(n);
  for (double& v : samples) v *= two_n;
  const int df = static_cast<int>(p.size()) - 1;
  GofReport r;
  r.sample_size = samples.size();
  r.statistic = ks_statistic(std::move(samples), [df](double x) { return chi2_cdf(std::max(0.0, x), df); });
  r.reference = "chi2(" + std::to_string(df) + ")";
  r.seed = options.seed;
  r.n_over_k = static_cast<double>(n) / static_cast<double>(p.size());
  return r;
}

GofReport gof_normal_poisson(const Distribution& p, std::uint64_t n, const McOptions& options) {
  auto samples = mc_poisson_kl(p, n, options);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (double& v : samples) v *= root_n;
  GofReport r;
  r.sample_size = samples.size();
  r.statistic = ks_statistic(std::move(samples), normal_cdf);
  r.reference = "normal(0,1)";
  r.seed = options.seed;
  r.n_over_k = static_cast<double>(n) / static_cast<double>(p.size());
  return r;
}

GofReport gof_poisson_chisq(const Distribution& p, std::uint64_t n, const McOptions& options) {
  auto samples = mc_poisson_kl(p, n, options);
  const double two_n = 2.0 * static_cast<double>(n);
  for (double& v : samples) v *= two_n;
  const int df = static_cast<int>(p.size()) - 1;
  GofReport r;
  r.sample_size = samples.size();
  // Negative draws sit below the support, where the reference CDF is 0.
  r.statistic = ks_statistic(std::move(samples), [df](double x) { return x <= 0.0 ? 0.0 : chi2_cdf(x, df); });
  r.reference = "chi2(" + std::to_string(df) + ")";
  r.seed = options.seed;
  r.n_over_k = static_cast<double>(n) / static_cast<double>(p.size());
  return r;
}

}  // namespace kltail
