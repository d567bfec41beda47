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

#include "kltail/cli/verify.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "kltail/bounds.hpp"
#include "kltail/cli/grid.hpp"
#include "kltail/cli/table.hpp"
#include "kltail/oracle.hpp"
#include "kltail/rng.hpp"
#include "kltail/sampling.hpp"

namespace kltail::cli {

namespace {

struct Worst {
  double margin = std::numeric_limits<double>::infinity();
  // log(rhs / lhs) over checks with lhs > 0.
  double log_ratio = std::numeric_limits<double>::infinity();
  std::uint64_t checked = 0;

  void record(double lhs, double rhs) {
    ++checked;
    margin = std::min(margin, rhs - lhs);
    if (lhs > 0.0) log_ratio = std::min(log_ratio, std::log(rhs) - std::log(lhs));
  }
};

std::string describe(const Distribution& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + format_number(p[i]);
  return s + "]";
}

struct Failure {
  std::string check;
  std::uint64_t n, k;
  std::string dist;
  double eps;
  double lhs, rhs;
};

}  // namespace

int run_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  using BoundFn = std::function<BoundResult(std::uint64_t, std::uint64_t, double)>;
  std::vector<std::pair<std::string, BoundFn>> kl_bounds = {
      {"mot", mot_bound},
      {"thm1_exact",
       [&o](std::uint64_t n, std::uint64_t k, double eps) {
         auto r = thm1_exact(n, k, eps);
         if (o.inject_bug) {
           r.log_value -= std::log(1000.0);
           r.value = std::exp(r.log_value);
         }
         return r;
       }},
      {"thm1_piecewise", thm1_piecewise},
      {"diffslope", diffslope_bound},
      {"binary", [](std::uint64_t n, std::uint64_t, double eps) { return binary_bound(n, eps); }},
      {"agrawal", agrawal_bound},
  };

  std::map<std::string, Worst> worst;
  std::uint64_t conj_checked = 0, conj_violations = 0;
  double conj_worst = std::numeric_limits<double>::infinity();

  auto fail = [&](const Failure& f) {
    err << "COUNTEREXAMPLE check=" << f.check << " n=" << f.n << " k=" << f.k << " P=" << f.dist
        << " eps=" << format_number(f.eps) << " lhs=" << format_number(f.lhs)
        << " rhs=" << format_number(f.rhs) << '\n';
    return 1;
  };

  const auto cells = desk_grid(o.n_max, o.k_max);
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const auto [n, k] = cells[ci];
    PhiloxStream rng(o.seed, ci);
    for (std::uint64_t d = 0; d < o.dists_per_cell; ++d) {
      const auto p = random_interior_distribution(k, rng);
      const double eps_max = -std::log(p.min_prob());
      const auto grid = linear_grid(0.0, eps_max, o.eps_points);
      const auto tails = exact_tail_kl(p, n, grid);

      for (std::size_t e = 0; e < grid.size(); ++e) {
        const double exact = tails[e].probability;
        for (const auto& [name, fn] : kl_bounds) {
          if (name == "binary" && k != 2) continue;
          if (name == "thm1_piecewise" && k < 3) continue;
          const auto b = fn(n, k, grid[e]);
          if (!b.valid) continue;
          const double rhs = b.probability();
          worst["kl_tail<=" + name].record(exact, rhs);
          if (exact > rhs + o.slack) {
            return fail({"kl_tail<=" + name, n, k, describe(p), grid[e], exact, rhs});
          }
        }
        if (o.conjectures) {
          const double rhs = conjecture_noncentral(n, k, grid[e]).probability();
          ++conj_checked;
          conj_worst = std::min(conj_worst, rhs - exact);
          if (exact > rhs + o.slack) ++conj_violations;
        }
      }

      const auto m = exact_mean_var_kl(p, n);
      const auto mb = mean_bounds(n, k);
      worst["mean<=log(1+(k-1)/n)"].record(m.mean, mb.upper);
      if (m.mean > mb.upper + o.slack) {
        return fail({"mean<=log(1+(k-1)/n)", n, k, describe(p), 0.0, m.mean, mb.upper});
      }
      const double v1 = 6.0 * std::pow(3.0 + std::log(static_cast<double>(k)), 2) /
                        static_cast<double>(n);
      worst["var<=6(3+log k)^2/n"].record(m.var, v1);
      if (m.var > v1 + o.slack) {
        return fail({"var<=6(3+log k)^2/n", n, k, describe(p), 0.0, m.var, v1});
      }
    }

    // L1 deviation, uniform P.
    const auto u = Distribution::uniform(k);
    const auto grid = linear_grid(0.0, 2.0, o.eps_points);
    const auto tails = exact_tail_l1(u, n, grid);
    for (std::size_t e = 0; e < grid.size(); ++e) {
      const double exact = tails[e].probability;
      std::vector<BoundResult> bs = {l1_weissman(n, grid[e], u)};
      bs.push_back(l1_thm4(n, grid[e], u, Thm1Variant::exact));
      if (k >= 3) bs.push_back(l1_thm4(n, grid[e], u, Thm1Variant::piecewise));
      for (const auto& b : bs) {
        if (!b.valid) continue;
        const std::string check = "l1_tail<=" + b.name;
        worst[check].record(exact, b.probability());
        if (exact > b.probability() + o.slack) {
          return fail({check, n, k, describe(u), grid[e], exact, b.probability()});
        }
      }
    }
  }

  out << "verify: n<=" << o.n_max << " k<=" << o.k_max << " dists/cell=" << o.dists_per_cell
      << " eps points=" << o.eps_points << " seed=" << o.seed << '\n';
  for (const auto& [check, w] : worst) {
    out << "PASS " << check << " checked=" << w.checked
        << " min_margin=" << format_number(w.margin)
        << " min_log_ratio=" << format_number(w.log_ratio) << '\n';
  }
  if (o.conjectures) {
    out << "conjectures (report only)\n";
    out << "  conjecture_noncentral checked=" << conj_checked << " violations=" << conj_violations
        << " min_margin=" << format_number(conj_worst) << '\n';
  }
  return 0;
}

}  // namespace kltail::cli
