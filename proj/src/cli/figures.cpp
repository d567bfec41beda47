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

#include "kltail/cli/figures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kltail/bounds.hpp"
#include "kltail/cli/grid.hpp"
#include "kltail/distribution.hpp"
#include "kltail/montecarlo.hpp"

#ifndef KLTAIL_VERSION
#define KLTAIL_VERSION "dev"
#endif

namespace kltail::cli {

namespace {

enum class Kind { kl_vs_eps, kl_vs_n, l1_vs_eps };

struct FigureDefaults {
  std::string id;
  Kind kind;
  std::uint64_t n;
  std::uint64_t k;
  /// Upper end of the eps axis as a multiple of k/n (KL) or absolute (L1).
  double eps_span;
  std::uint64_t points;
};

const std::vector<FigureDefaults>& defaults() {
  static const std::vector<FigureDefaults> table = {
      {"fig1", Kind::kl_vs_eps, 1000, 31, 5.0, 101},
      {"fig2", Kind::kl_vs_eps, 1000, 60, 4.0, 101},
      {"fig3", Kind::kl_vs_eps, 1000, 1200, 2.0, 101},
      {"fig4", Kind::kl_vs_eps, 20, 100, 2.0, 101},
      {"fig5", Kind::kl_vs_n, 0, 1000, 6.0, 61},
      {"fig6", Kind::l1_vs_eps, 90, 100, 2.0, 101},
      {"fig7", Kind::l1_vs_eps, 20, 40, 2.0, 101},
  };
  return table;
}

constexpr std::uint64_t kFig5NMin = 1000;
constexpr std::uint64_t kFig5NMax = 1600;

double clamp_log(double v) { return std::min(0.0, v); }

double log_estimate(const TailEstimate& e) {
  return e.hits == 0 ? -std::numeric_limits<double>::infinity() : std::log(e.p_hat);
}

McOptions mc_options(const FigureConfig& c) {
  McOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.workers = c.workers;
  return o;
}

std::string config_line(const FigureConfig& c, const std::string& axis, std::uint64_t n,
                        std::uint64_t k, const std::string& extra) {
  std::string s = "kltail " KLTAIL_VERSION " figures id=" + c.id;
  if (n) s += " n=" + std::to_string(n);
  s += " k=" + std::to_string(k) + " " + axis + extra + " dist=uniform trials=" +
       std::to_string(c.trials) + " seed=" + std::to_string(c.seed);
  return s;
}

Table kl_vs_eps(const FigureConfig& c, const FigureDefaults& d) {
  const std::uint64_t n = c.n.value_or(d.n);
  const std::uint64_t k = c.k.value_or(d.k);
  const std::uint64_t points = c.points.value_or(d.points);
  const double stop = d.eps_span * static_cast<double>(k) / static_cast<double>(n);
  const auto grid = c.eps_grid.value_or(linear_grid(0.0, stop, points));
  const std::string axis = "eps=" + c.eps_grid_text.value_or(grid_spec(0.0, stop, points));

  std::vector<std::string> cols = {"eps", "log_bound_mot", "log_bound_thm1",
                                   "log_bound_thm1_piecewise"};
  if (c.trials > 0) cols.push_back("log_mc_estimate");
  Table t(cols);
  t.add_comment(config_line(c, axis, n, k, ""));

  std::vector<TailEstimate> mc;
  if (c.trials > 0) mc = mc_tail_kl(Distribution::uniform(k), n, grid, mc_options(c));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double eps = grid[i];
    std::vector<Cell> row = {eps, clamp_log(mot_bound(n, k, eps).log_value),
                             clamp_log(thm1_exact(n, k, eps).log_value)};
    row.emplace_back(k >= 3 ? clamp_log(thm1_piecewise(n, k, eps).log_value)
                            : std::numeric_limits<double>::quiet_NaN());
    if (c.trials > 0) row.emplace_back(clamp_log(log_estimate(mc[i])));
    t.add_row(std::move(row));
  }
  return t;
}

Table kl_vs_n(const FigureConfig& c, const FigureDefaults& d) {
  const std::uint64_t k = c.k.value_or(d.k);
  const double eps = c.eps.value_or(d.eps_span);
  const std::uint64_t lo = c.n_min.value_or(kFig5NMin);
  const std::uint64_t hi = c.n_max.value_or(kFig5NMax);
  const std::uint64_t points = c.points.value_or(d.points);
  if (lo == 0 || hi < lo) throw std::invalid_argument("--n-min/--n-max: need 1 <= n-min <= n-max");

  std::vector<std::uint64_t> ns;
  for (double x : linear_grid(static_cast<double>(lo), static_cast<double>(hi), points)) {
    const auto v = static_cast<std::uint64_t>(std::llround(x));
    if (ns.empty() || ns.back() != v) ns.push_back(v);
  }
  std::vector<std::string> cols = {"n", "log_bound_mot", "log_bound_thm1",
                                   "log_bound_thm1_piecewise"};
  if (c.trials > 0) cols.push_back("log_mc_estimate");
  Table t(cols);
  t.add_comment(config_line(c, "n=" + std::to_string(lo) + ":" + std::to_string(hi) + ":" +
                                   std::to_string(points),
                            0, k, " eps=" + format_number(eps)));
  const auto p = Distribution::uniform(k);
  for (std::uint64_t n : ns) {
    std::vector<Cell> row = {static_cast<std::int64_t>(n), clamp_log(mot_bound(n, k, eps).log_value),
                             clamp_log(thm1_exact(n, k, eps).log_value)};
    row.emplace_back(k >= 3 ? clamp_log(thm1_piecewise(n, k, eps).log_value)
                            : std::numeric_limits<double>::quiet_NaN());
    if (c.trials > 0) row.emplace_back(clamp_log(log_estimate(mc_tail_kl(p, n, eps, mc_options(c)))));
    t.add_row(std::move(row));
  }
  return t;
}

Table l1_vs_eps(const FigureConfig& c, const FigureDefaults& d) {
  const std::uint64_t n = c.n.value_or(d.n);
  const std::uint64_t k = c.k.value_or(d.k);
  const std::uint64_t points = c.points.value_or(d.points);
  const auto grid = c.eps_grid.value_or(linear_grid(0.0, d.eps_span, points));
  const std::string axis = "eps=" + c.eps_grid_text.value_or(grid_spec(0.0, d.eps_span, points));
  const auto p = Distribution::uniform(k);

  std::vector<std::string> cols = {"eps", "log_bound_l1_weissman", "log_bound_l1_thm4",
                                   "log_bound_l1_thm4_piecewise"};
  if (c.trials > 0) cols.push_back("log_mc_estimate");
  Table t(cols);
  t.add_comment(config_line(c, axis, n, k, ""));

  std::vector<TailEstimate> mc;
  if (c.trials > 0) mc = mc_tail_l1(p, n, grid, mc_options(c));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double eps = grid[i];
    std::vector<Cell> row = {eps, clamp_log(l1_weissman(n, eps, p).log_value),
                             clamp_log(l1_thm4(n, eps, p, Thm1Variant::exact).log_value)};
    row.emplace_back(k >= 3 ? clamp_log(l1_thm4(n, eps, p, Thm1Variant::piecewise).log_value)
                            : std::numeric_limits<double>::quiet_NaN());
    if (c.trials > 0) row.emplace_back(clamp_log(log_estimate(mc[i])));
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& d : defaults()) v.push_back(d.id);
    return v;
  }();
  return ids;
}

Table figure_table(const FigureConfig& config) {
  const auto& table = defaults();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const FigureDefaults& d) { return d.id == config.id; });
  if (it == table.end()) {
    throw std::invalid_argument("figures: unknown figure id '" + config.id + "' (fig1..fig7)");
  }
  switch (it->kind) {
    case Kind::kl_vs_eps:
      return kl_vs_eps(config, *it);
    case Kind::kl_vs_n:
      return kl_vs_n(config, *it);
    case Kind::l1_vs_eps:
      return l1_vs_eps(config, *it);
  }
  throw std::logic_error("figure_table: unreachable");
}

}  // namespace kltail::cli
