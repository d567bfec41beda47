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

#include "kltail/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kltail/constants.hpp"
#include "kltail/divergence.hpp"
#include "kltail/special.hpp"

namespace kltail {

namespace {

using std::numbers::e;
using std::numbers::ln2;
using std::numbers::pi;

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_nk(std::uint64_t n, std::uint64_t k, std::uint64_t k_min, const char* who) {
  if (n < 1) {
    throw std::invalid_argument(std::string(who) + ": n must be >= 1");
  }
  if (k < k_min) {
    throw std::invalid_argument(std::string(who) + ": k must be >= " + std::to_string(k_min) +
                                ", got " + std::to_string(k));
  }
}

void check_eps(double eps, const char* who) {
  if (std::isnan(eps) || eps < 0.0) {
    throw std::invalid_argument(std::string(who) + ": eps must be >= 0");
  }
}

double as_double(std::uint64_t x) { return static_cast<double>(x); }

void set_value(BoundResult& r) { r.value = std::exp(r.log_value); }

// f(n, k) e^{-n eps} with log f = log_prefactor.
BoundResult prefactor_bound(std::string name, double log_prefactor, std::uint64_t n, double eps) {
  BoundResult r;
  r.name = std::move(name);
  r.log_value = log_prefactor - as_double(n) * eps;
  r.eps_thresh = log_prefactor / as_double(n);
  set_value(r);
  return r;
}

double log_thm1_exact_prefactor(std::uint64_t n, std::uint64_t k) {
  const auto terms = static_cast<int>(k - 1);  // i = 0..k-2
  const auto table = wallis_table(terms);
  const double log_step = std::log(e * std::sqrt(as_double(n)) / (2.0 * pi));
  std::vector<double> logs(static_cast<std::size_t>(terms));
  for (int i = 0; i < terms; ++i) {
    // K_{i-1} lives at log_K[i].
    logs[static_cast<std::size_t>(i)] = table->log_K[static_cast<std::size_t>(i)] + i * log_step;
  }
  const double lead = std::log(3.0 * table->c[1] / table->c[2]);
  return lead + log_sum_exp(logs);
}

double log_thm1_loose_prefactor(std::uint64_t n, std::uint64_t k) {
  std::vector<double> logs;
  logs.reserve(k - 1);
  logs.push_back(0.0);
  const double scale = e * e * e * as_double(n) / (2.0 * pi);
  for (std::uint64_t i = 1; i + 2 <= k; ++i) {
    const double di = as_double(i);
    logs.push_back(0.5 * di * std::log(scale / di));
  }
  return std::log(universal_constants().C1) + log_sum_exp(logs);
}

struct PiecewiseRow {
  int row;
  double log_prefactor;
};

std::vector<PiecewiseRow> piecewise_candidates(std::uint64_t n, std::uint64_t k) {
  const auto& u = universal_constants();
  const double dn = as_double(n);
  const double dk = as_double(k);
  const double nc0 = dn * u.C0;
  const double log_c1 = std::log(u.C1);
  const double power_term = 0.5 * dk * std::log(nc0 / dk);  // log (sqrt(C0 n / k))^k
  const double exp_term = nc0 / (2.0 * e);                  // log e^{C0 n / (2e)}

  std::vector<PiecewiseRow> rows;
  if (dk <= std::sqrt(nc0) + 2.0) {
    rows.push_back({1, log_c1 + 1.0 + power_term});
  }
  if (dk <= nc0 / e + 2.0) {
    rows.push_back({2, log_c1 + std::log(dk) + power_term});
  }
  if (dk >= nc0 / e + 2.0 && dk <= nc0 + 2.0) {
    rows.push_back({3, log_c1 + std::log(dk) + exp_term});
  }
  if (dk >= nc0 + 2.0) {
    rows.push_back({4, log_c1 + log_add_exp(std::log(nc0) + exp_term, std::log(dk))});
  }
  return rows;
}

}  // namespace

const char* to_string(Thm1Variant variant) {
  switch (variant) {
    case Thm1Variant::exact:
      return "exact";
    case Thm1Variant::loose:
      return "loose";
    case Thm1Variant::piecewise:
      return "piecewise";
  }
  return "?";
}

BoundResult mot_bound(std::uint64_t n, std::uint64_t k, double eps) {
  check_nk(n, k, 2, "mot_bound");
  check_eps(eps, "mot_bound");
  return prefactor_bound("mot", log_binomial(n + k - 1, k - 1), n, eps);
}

BoundResult binary_bound(std::uint64_t n, double eps) {
  check_nk(n, 2, 2, "binary_bound");
  check_eps(eps, "binary_bound");
  return prefactor_bound("binary", ln2, n, eps);
}

BoundResult thm1_exact(std::uint64_t n, std::uint64_t k, double eps) {
  check_nk(n, k, 2, "thm1_exact");
  check_eps(eps, "thm1_exact");
  auto r = prefactor_bound("thm1_exact", log_thm1_exact_prefactor(n, k), n, eps);
  if (n < 2) {
    r.valid = false;
    r.validity_note = "proved for n >= 2";
  }
  return r;
}

BoundResult thm1_loose(std::uint64_t n, std::uint64_t k, double eps) {
  check_nk(n, k, 3, "thm1_loose");
  check_eps(eps, "thm1_loose");
  auto r = prefactor_bound("thm1_loose", log_thm1_loose_prefactor(n, k), n, eps);
  if (n < 2) {
    r.valid = false;
    r.validity_note = "proved for n >= 2";
  }
  return r;
}

std::vector<int> thm1_piecewise_rows(std::uint64_t n, std::uint64_t k) {
  check_nk(n, k, 3, "thm1_piecewise_rows");
  std::vector<int> rows;
  for (const auto& row : piecewise_candidates(n, k)) rows.push_back(row.row);
  return rows;
}

BoundResult thm1_piecewise(std::uint64_t n, std::uint64_t k, double eps) {
  check_nk(n, k, 3, "thm1_piecewise");
  check_eps(eps, "thm1_piecewise");
  const auto rows = piecewise_candidates(n, k);
  const auto best = std::min_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.log_prefactor < b.log_prefactor;
  });
  auto r = prefactor_bound("thm1_piecewise", best->log_prefactor, n, eps);
  std::string note = "row " + std::to_string(best->row);
  if (rows.size() > 1) {
    note += " (applicable:";
    for (const auto& row : rows) note += " " + std::to_string(row.row);
    note += ")";
  }
  if (n < 2) {
    r.valid = false;
    note += "; proved for n >= 2";
  }
  r.validity_note = note;
  return r;
}

BoundResult thm1(std::uint64_t n, std::uint64_t k, double eps, Thm1Variant variant) {
  switch (variant) {
    case Thm1Variant::exact:
      return thm1_exact(n, k, eps);
    case Thm1Variant::loose:
      return thm1_loose(n, k, eps);
    case Thm1Variant::piecewise:
      return thm1_piecewise(n, k, eps);
  }
  throw std::invalid_argument("thm1: unknown variant");
}

BoundResult diffslope_bound(std::uint64_t n, std::uint64_t k, double eps) {
  check_nk(n, k, 2, "diffslope_bound");
  check_eps(eps, "diffslope_bound");
  const double km1 = as_double(k - 1);
  BoundResult r;
  r.name = "diffslope";
  r.log_value = std::log(2.0 * km1) - as_double(n) * eps / km1;
  r.eps_thresh = km1 * std::log(2.0 * km1) / as_double(n);
  set_value(r);
  return r;
}

ThreshComparison eps_thresh_compare(std::uint64_t n, std::uint64_t k) {
  check_nk(n, k, 3, "eps_thresh_compare");
  ThreshComparison t;
  t.n = n;
  t.k = k;
  const double dn = as_double(n);
  const double km1 = as_double(k - 1);
  t.mot = *mot_bound(n, k, 0.0).eps_thresh;
  t.mot_lower = km1 * std::log((dn + km1) / km1) / dn;
  t.thm1 = *thm1_exact(n, k, 0.0).eps_thresh;
  t.thm1_piecewise = *thm1_piecewise(n, k, 0.0).eps_thresh;
  t.diffslope = *diffslope_bound(n, k, 0.0).eps_thresh;
  t.ratio = t.thm1 / t.mot_lower;
  t.ratio_exact_mot = t.thm1 / t.mot;
  t.piecewise_ratio = t.thm1_piecewise / t.mot_lower;
  return t;
}

MeanBounds mean_bounds(std::uint64_t n, std::uint64_t k) {
  check_nk(n, k, 2, "mean_bounds");
  const double dn = as_double(n);
  const double dk = as_double(k);
  MeanBounds m;
  m.upper = std::log1p((dk - 1.0) / dn);
  if (n >= 15 * k) {
    m.lower = (dk - 1.0) / (2.0 * dn) + dk * dk / (20.0 * dn * dn) - 1.0 / (12.0 * dn * dn);
  }
  return m;
}

VarianceBound var_upper(std::uint64_t n, std::uint64_t k, double c_free) {
  check_nk(n, k, 2, "var_upper");
  if (!(c_free > 0.0)) {
    throw std::invalid_argument("var_upper: the constant must be > 0");
  }
  const double dn = as_double(n);
  const double dk = as_double(k);
  const double log_branch = 6.0 * std::pow(3.0 + std::log(dk), 2) / dn;
  const double k_branch = c_free * dk / (dn * dn);
  VarianceBound v;
  v.branch = k_branch < log_branch ? 2 : 1;
  v.value = std::min(log_branch, k_branch);
  if (c_free < (dk - 1.0) / (2.0 * dk)) {
    v.valid = false;
    v.validity_note = "constant below (k-1)/(2k) contradicts the limiting variance (k-1)/(2n^2)";
  }
  return v;
}

double moment_upper(std::uint64_t n, std::uint64_t k, unsigned p, double eps_thresh) {
  check_nk(n, k, 2, "moment_upper");
  if (p == 0) {
    throw std::invalid_argument("moment_upper: p must be >= 1");
  }
  const double dp = static_cast<double>(p);
  const double tail = std::exp(std::lgamma(dp + 1.0) - dp * std::log(as_double(n)));
  return std::pow(eps_thresh, dp) + tail;
}

BoundResult agrawal_bound(std::uint64_t n, std::uint64_t k, double eps) {
  check_nk(n, k, 2, "agrawal_bound");
  check_eps(eps, "agrawal_bound");
  const double dn = as_double(n);
  const double km1 = as_double(k - 1);
  BoundResult r;
  r.name = "agrawal";
  r.valid = eps > km1 * (ln2 + 1.0) / dn;
  if (!r.valid) {
    r.validity_note = "requires eps > (k-1)(log 2 + 1)/n";
  }
  const double inner = eps * dn / km1 - ln2;
  if (std::isinf(eps)) {
    r.log_value = -kInf;
  } else if (inner > 0.0) {
    r.log_value = -dn * eps + km1 * std::log(2.0 * e * inner);
  } else {
    r.log_value = kInf;
  }
  set_value(r);
  return r;
}

BoundResult agrawal_simplified(std::uint64_t n, std::uint64_t k, double eps) {
  check_nk(n, k, 2, "agrawal_simplified");
  check_eps(eps, "agrawal_simplified");
  BoundResult r;
  r.name = "agrawal_simplified";
  r.log_value = -as_double(n) * eps / 2.0;
  r.valid = eps > 10.0 * as_double(k - 1) / as_double(n);
  if (!r.valid) {
    r.validity_note = "requires eps > 10(k-1)/n";
  }
  set_value(r);
  return r;
}

BoundResult conjecture_noncentral(std::uint64_t n, std::uint64_t k, double eps) {
  check_nk(n, k, 2, "conjecture_noncentral");
  check_eps(eps, "conjecture_noncentral");
  const double dn = as_double(n);
  auto r = prefactor_bound("conjecture_noncentral",
                           dn * std::log1p(as_double(k - 1) / dn) + ln2, n, eps);
  r.conjectural = true;
  r.validity_note = "conjectural";
  return r;
}

BoundResult conjecture_central(std::uint64_t n, std::uint64_t k, double t, double g1, double g2) {
  check_nk(n, k, 2, "conjecture_central");
  check_eps(t, "conjecture_central");
  if (!(g1 > 0.0) || !(g2 > 0.0)) {
    throw std::invalid_argument("conjecture_central: g1 and g2 must be > 0");
  }
  const double dn = as_double(n);
  const double quadratic = dn * dn * t * t / as_double(k - 1);
  const double linear = dn * t;
  BoundResult r;
  r.name = "conjecture_central";
  r.log_value = std::log(g1) - g2 * std::min(quadratic, linear);
  r.conjectural = true;
  r.validity_note = "conjectural";
  set_value(r);
  return r;
}

BoundResult l1_weissman(std::uint64_t n, std::uint64_t k, double eps, double phi_value) {
  check_nk(n, k, 2, "l1_weissman");
  if (!(eps >= 0.0 && eps <= 2.0)) {
    throw std::invalid_argument("l1_weissman: eps must lie in [0, 2]");
  }
  const double dk = as_double(k);
  // log(2^k - 2) = k log 2 + log(1 - 2^{1-k})
  const double log_prefactor = dk * ln2 + std::log1p(-std::exp2(1.0 - dk));
  BoundResult r;
  r.name = "l1_weissman";
  r.log_value = log_prefactor - as_double(n) * phi_value * eps * eps / 4.0;
  set_value(r);
  return r;
}

BoundResult l1_weissman(std::uint64_t n, double eps, const Distribution& p) {
  return l1_weissman(n, p.size(), eps, phi(pi_P(p)));
}

BoundResult l1_thm4(std::uint64_t n, std::uint64_t k, double eps, double phi_value,
                    Thm1Variant variant) {
  if (!(eps >= 0.0 && eps <= 2.0)) {
    throw std::invalid_argument("l1_thm4: eps must lie in [0, 2]");
  }
  auto r = thm1(n, k, phi_value * eps * eps / 4.0, variant);
  r.name = std::string("l1_thm4_") + to_string(variant);
  r.eps_thresh.reset();
  return r;
}

BoundResult l1_thm4(std::uint64_t n, double eps, const Distribution& p, Thm1Variant variant) {
  return l1_thm4(n, p.size(), eps, phi(pi_P(p)), variant);
}

BoundResult kl_best_bound(std::uint64_t n, std::uint64_t k, double eps) {
  check_nk(n, k, 2, "kl_best_bound");
  std::vector<BoundResult> candidates;
  if (k == 2) candidates.push_back(binary_bound(n, eps));
  candidates.push_back(diffslope_bound(n, k, eps));
  candidates.push_back(thm1_exact(n, k, eps));
  if (k >= 3) candidates.push_back(thm1_piecewise(n, k, eps));
  candidates.push_back(agrawal_bound(n, k, eps));
  candidates.push_back(mot_bound(n, k, eps));
  std::erase_if(candidates, [](const BoundResult& r) { return !r.valid; });

  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].log_value < candidates[best].log_value) best = i;
  }
  return candidates[best];
}

}  // namespace kltail
