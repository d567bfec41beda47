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

#include "kltail/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kltail/bounds.hpp"
#include "kltail/cli/figures.hpp"
#include "kltail/cli/grid.hpp"
#include "kltail/cli/table.hpp"
#include "kltail/cli/verify.hpp"
#include "kltail/divergence.hpp"
#include "kltail/montecarlo.hpp"
#include "kltail/oracle.hpp"

namespace kltail::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> k;
  std::optional<double> eps;
  std::optional<std::string> eps_grid;
  std::string dist = "uniform";
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string format = "csv";
  std::string out;
  // command specific
  std::string model = "multinomial";
  bool moments = false;
  std::vector<std::string> figures;
  std::string out_dir;
  std::optional<std::uint64_t> n_min, n_max, points;
  VerifyOptions verify;
};

std::uint64_t need(const std::optional<std::uint64_t>& v, const char* flag) {
  if (!v) throw UsageError(std::string(flag) + ": required");
  return *v;
}

std::uint64_t need_n(const RunConfig& c) {
  const auto n = need(c.n, "--n");
  if (n == 0) throw UsageError("--n: must be >= 1");
  return n;
}

std::uint64_t need_k(const RunConfig& c, std::uint64_t minimum = 2) {
  const auto k = need(c.k, "--k");
  if (k < minimum) throw UsageError("--k: must be >= " + std::to_string(minimum));
  return k;
}

std::vector<double> eps_values(const RunConfig& c, std::optional<std::vector<double>> fallback = {}) {
  if (c.eps && c.eps_grid) throw UsageError("--eps/--eps-grid: give only one");
  std::vector<double> grid;
  if (c.eps) {
    grid = {*c.eps};
  } else if (c.eps_grid) {
    try {
      grid = parse_eps_grid(*c.eps_grid);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else if (fallback) {
    grid = *fallback;
  } else {
    throw UsageError("--eps: required (or --eps-grid)");
  }
  for (double e : grid) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw UsageError("--eps: must be finite and >= 0");
  }
  return grid;
}

Distribution distribution(const RunConfig& c, std::uint64_t k) {
  try {
    return parse_distribution(c.dist, k);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--dist: ") + e.what());
  }
}

McOptions mc_options(const RunConfig& c) {
  if (c.trials == 0) throw UsageError("--trials: must be >= 1");
  McOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.workers = c.workers;
  return o;
}

std::string config_line(const RunConfig& c) {
  std::string s = "kltail " KLTAIL_VERSION " " + c.command;
  if (c.n) s += " n=" + std::to_string(*c.n);
  if (c.k) s += " k=" + std::to_string(*c.k);
  if (c.eps) s += " eps=" + format_number(*c.eps);
  if (c.eps_grid) s += " eps-grid=" + *c.eps_grid;
  s += " dist=" + c.dist;
  if (c.command.rfind("mc-", 0) == 0 || c.command == "gof" || c.command == "compare") {
    s += " trials=" + std::to_string(c.trials) + " seed=" + std::to_string(c.seed);
  }
  if (c.command == "gof") s += " model=" + c.model;
  return s;
}

Cell opt_cell(const std::optional<double>& v) {
  return v ? Cell(*v) : Cell(std::numeric_limits<double>::quiet_NaN());
}

void bound_row(Table& t, double eps, const BoundResult& b) {
  t.add_row({b.name, eps, b.value, b.log_value, b.valid, opt_cell(b.eps_thresh), b.validity_note});
}

Table cmd_bound(const RunConfig& c) {
  const auto n = need_n(c);
  const auto k = need_k(c);
  Table t({"bound_name", "eps", "value", "log_value", "valid", "eps_thresh", "note"});
  for (double eps : eps_values(c)) {
    bound_row(t, eps, mot_bound(n, k, eps));
    if (k == 2) bound_row(t, eps, binary_bound(n, eps));
    bound_row(t, eps, thm1_exact(n, k, eps));
    if (k >= 3) {
      bound_row(t, eps, thm1_loose(n, k, eps));
      bound_row(t, eps, thm1_piecewise(n, k, eps));
    }
    bound_row(t, eps, diffslope_bound(n, k, eps));
    bound_row(t, eps, agrawal_bound(n, k, eps));
    bound_row(t, eps, agrawal_simplified(n, k, eps));
    auto conj = conjecture_noncentral(n, k, eps);
    conj.validity_note = conj.validity_note.empty() ? "conjectural" : conj.validity_note;
    bound_row(t, eps, conj);
    auto best = kl_best_bound(n, k, eps);
    best.validity_note = "best proven: " + best.name;
    best.name = "best";
    bound_row(t, eps, best);
  }
  return t;
}

Table cmd_thresh(const RunConfig& c) {
  const auto n = need_n(c);
  const auto k = need_k(c, 3);
  const auto r = eps_thresh_compare(n, k);
  Table t({"n", "k", "mot", "mot_lower", "thm1", "thm1_piecewise", "diffslope", "ratio",
           "ratio_exact_mot", "piecewise_ratio"});
  t.add_row({static_cast<std::int64_t>(n), static_cast<std::int64_t>(k), r.mot, r.mot_lower, r.thm1,
             r.thm1_piecewise, r.diffslope, r.ratio, r.ratio_exact_mot, r.piecewise_ratio});
  return t;
}

Table cmd_oracle(const RunConfig& c) {
  const auto n = need_n(c);
  const auto k = need_k(c);
  const auto p = distribution(c, k);
  if (c.moments) {
    const auto m = exact_mean_var_kl(p, n);
    const auto mb = mean_bounds(n, k);
    const auto vb = var_upper(n, k);
    Table t({"n", "k", "mean", "var", "mean_upper", "mean_lower", "var_upper", "var_branch"});
    t.add_row({static_cast<std::int64_t>(n), static_cast<std::int64_t>(k), m.mean, m.var, mb.upper,
               opt_cell(mb.lower), vb.value, static_cast<std::int64_t>(vb.branch)});
    return t;
  }
  const auto grid = eps_values(c);
  const auto kl_tails = exact_tail_kl(p, n, grid);
  const auto l1_tails = exact_tail_l1(p, n, grid);
  Table t({"eps", "exact_tail_kl", "exact_tail_l1", "types_enumerated"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    t.add_row({grid[i], kl_tails[i].probability, l1_tails[i].probability,
               static_cast<std::int64_t>(kl_tails[i].types_enumerated)});
  }
  return t;
}

Table cmd_compare(const RunConfig& c, std::ostream& err) {
  const auto n = need_n(c);
  const auto k = need_k(c);
  const auto p = distribution(c, k);
  const auto grid = eps_values(c);
  std::vector<ExactTail> exact;
  const bool feasible = type_count(n, k) <= enumeration_cap();
  if (feasible) exact = exact_tail_kl(p, n, grid);
  std::vector<TailEstimate> mc;
  if (c.trials > 0) mc = mc_tail_kl(p, n, grid, mc_options(c));
  Table t({"eps", "exact_tail", "mc_p_hat", "mc_ci_low", "mc_ci_high", "log_mot", "log_thm1",
           "log_thm1_piecewise", "log_best", "best_name"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double eps = grid[i];
    const auto best = kl_best_bound(n, k, eps);
    t.add_row({eps, feasible ? exact[i].probability : nan, mc.empty() ? nan : mc[i].p_hat,
               mc.empty() ? nan : mc[i].ci_low, mc.empty() ? nan : mc[i].ci_high,
               mot_bound(n, k, eps).log_value, thm1_exact(n, k, eps).log_value,
               k >= 3 ? thm1_piecewise(n, k, eps).log_value : nan, best.log_value, best.name});
  }
  if (!mc.empty() && mc.front().hits < 10) {
    err << "warning: fewer than 10 Monte Carlo hits; estimates are unreliable\n";
  }
  return t;
}

Table cmd_mc_tail(const RunConfig& c, std::ostream& err) {
  const auto n = need_n(c);
  const auto k = need_k(c);
  const auto p = distribution(c, k);
  const auto grid = eps_values(c);
  const auto est = mc_tail_kl(p, n, grid, mc_options(c));
  Table t({"eps", "p_hat", "ci_low", "ci_high", "ci_level", "hits", "trials", "seed"});
  bool warned = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& e = est[i];
    t.add_row({grid[i], e.p_hat, e.ci_low, e.ci_high, e.ci_level, static_cast<std::int64_t>(e.hits),
               static_cast<std::int64_t>(e.trials), std::to_string(e.seed)});
    if (e.hits < 10 && !warned) {
      err << "warning: p_hat * trials < 10 at eps=" << format_number(grid[i])
          << "; the estimate is unreliable\n";
      warned = true;
    }
  }
  return t;
}

Table cmd_mc_var(const RunConfig& c) {
  const auto n = need_n(c);
  const auto k = need_k(c);
  const auto p = distribution(c, k);
  auto o = mc_options(c);
  if (o.trials < 2) throw UsageError("--trials: must be >= 2");
  const auto e = mc_mean_var_kl(p, n, o);
  Table t({"n", "k", "mean", "var", "mean_se", "var_se", "trials", "seed"});
  t.add_row({static_cast<std::int64_t>(n), static_cast<std::int64_t>(k), e.mean, e.var, e.mean_se,
             e.var_se, static_cast<std::int64_t>(e.trials), std::to_string(e.seed)});
  return t;
}

Table cmd_gof(const RunConfig& c) {
  const auto n = need_n(c);
  const auto k = need_k(c);
  const auto p = distribution(c, k);
  const auto o = mc_options(c);
  GofReport r;
  if (c.model == "multinomial") {
    r = gof_chisq(p, n, o);
  } else if (c.model == "poisson") {
    r = gof_normal_poisson(p, n, o);
  } else if (c.model == "poisson-chisq") {
    r = gof_poisson_chisq(p, n, o);
  } else {
    throw UsageError("--model: expected multinomial, poisson or poisson-chisq");
  }
  Table t({"model", "reference", "statistic", "sample_size", "seed", "n_over_k"});
  t.add_row({c.model, r.reference, r.statistic, static_cast<std::int64_t>(r.sample_size),
             std::to_string(r.seed), r.n_over_k});
  return t;
}

Table cmd_l1(const RunConfig& c) {
  const auto n = need_n(c);
  const auto k = need_k(c);
  const auto p = distribution(c, k);
  const double pi = pi_P(p);
  const double ph = phi(pi);
  Table t({"bound_name", "eps", "value", "log_value", "valid", "pi_P", "phi"});
  for (double eps : eps_values(c, linear_grid(0.0, 2.0, 101))) {
    if (eps > 2.0) throw UsageError("--eps: the L1 deviation needs eps <= 2");
    std::vector<BoundResult> bs = {l1_weissman(n, k, eps, ph),
                                   l1_thm4(n, k, eps, ph, Thm1Variant::exact)};
    if (k >= 3) {
      bs.push_back(l1_thm4(n, k, eps, ph, Thm1Variant::loose));
      bs.push_back(l1_thm4(n, k, eps, ph, Thm1Variant::piecewise));
    }
    for (const auto& b : bs) t.add_row({b.name, eps, b.value, b.log_value, b.valid, pi, ph});
  }
  return t;
}

void emit(const Table& t, const RunConfig& c, std::ostream& out) {
  const auto fmt = parse_format(c.format);
  if (c.out.empty() || c.out == "-") {
    t.write(out, fmt);
    return;
  }
  std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("--out: cannot open '" + c.out + "'");
  t.write(f, fmt);
  if (!f) throw std::runtime_error("--out: write failed for '" + c.out + "'");
}

Table with_config(Table t, const RunConfig& c) {
  Table out(t.columns());
  out.add_comment(config_line(c));
  for (auto& r : t.rows()) out.add_row(r);
  return out;
}

int cmd_figures(const RunConfig& c, std::ostream& out) {
  auto ids = c.figures;
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) ids = figure_ids();
  const auto fmt = parse_format(c.format);
  if (ids.size() > 1 && c.out_dir.empty()) throw UsageError("--out-dir: required for several figures");
  std::vector<std::pair<std::string, Table>> tables;
  for (const auto& id : ids) {
    FigureConfig fc;
    fc.id = id;
    fc.n = c.n;
    fc.k = c.k;
    fc.eps = c.eps;
    if (c.eps_grid) {
      try {
        fc.eps_grid = parse_eps_grid(*c.eps_grid);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      fc.eps_grid_text = *c.eps_grid;
    }
    fc.n_min = c.n_min;
    fc.n_max = c.n_max;
    fc.points = c.points;
    fc.trials = c.trials;
    fc.seed = c.seed;
    fc.workers = c.workers;
    try {
      tables.emplace_back(id, figure_table(fc));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (c.out_dir.empty()) {
    emit(tables.front().second, c, out);
    return 0;
  }
  std::filesystem::create_directories(c.out_dir);
  for (const auto& [id, t] : tables) {
    const auto path = std::filesystem::path(c.out_dir) / (id + (fmt == Format::csv ? ".csv" : ".json"));
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("--out-dir: cannot open '" + path.string() + "'");
    t.write(f, fmt);
  }
  return 0;
}

void add_common(CLI::App* sub, RunConfig& c, bool with_mc) {
  sub->add_option("--n", c.n, "sample size");
  sub->add_option("--k", c.k, "alphabet size");
  sub->add_option("--eps", c.eps, "single deviation threshold");
  sub->add_option("--eps-grid", c.eps_grid, "start:stop:points[:lin|log]");
  sub->add_option("--dist", c.dist, "uniform or p1,p2,...")->capture_default_str();
  sub->add_option("--format", c.format, "csv or json")->capture_default_str();
  sub->add_option("--out", c.out, "output path (default stdout)");
  if (with_mc) {
    sub->add_option("--trials", c.trials, "Monte Carlo trials")->capture_default_str();
    sub->add_option("--seed", c.seed, "64-bit seed")->capture_default_str();
    sub->add_option("--workers", c.workers, "threads (0 = all cores)")->capture_default_str();
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"KL and L1 deviation tail bounds, exact oracle and Monte Carlo"};
  app.set_version_flag("--version", KLTAIL_VERSION);
  app.require_subcommand(1);
  RunConfig c;

  add_common(app.add_subcommand("bound", "evaluate every KL tail bound"), c, false);
  add_common(app.add_subcommand("thresh", "eps_thresh of each bound and the improvement ratio"), c,
             false);
  add_common(app.add_subcommand("compare", "exact, simulated and bounded tails side by side"), c,
             true);
  auto* oracle = app.add_subcommand("oracle", "exact tails by enumeration");
  add_common(oracle, c, false);
  oracle->add_flag("--moments", c.moments, "mean and variance of D instead of tails");
  add_common(app.add_subcommand("mc-tail", "Monte Carlo KL tail with Wilson interval"), c, true);
  add_common(app.add_subcommand("mc-var", "Monte Carlo mean and variance of D"), c, true);
  auto* gof = app.add_subcommand("gof", "Kolmogorov-Smirnov distance to the limit law");
  add_common(gof, c, true);
  gof->add_option("--model", c.model, "multinomial | poisson | poisson-chisq")->capture_default_str();
  auto* figures = app.add_subcommand("figures", "figure series as CSV/JSON");
  add_common(figures, c, true);
  figures->add_option("ids", c.figures, "fig1..fig7 or all");
  figures->add_option("--out-dir", c.out_dir, "directory for one file per figure");
  figures->add_option("--n-min", c.n_min, "fig5: first n");
  figures->add_option("--n-max", c.n_max, "fig5: last n");
  figures->add_option("--points", c.points, "points on the x axis");
  add_common(app.add_subcommand("l1", "L1 deviation bounds"), c, false);
  auto* verify = app.add_subcommand("verify", "oracle-vs-bound soundness grid");
  verify->add_option("--n-max", c.verify.n_max)->capture_default_str();
  verify->add_option("--k-max", c.verify.k_max)->capture_default_str();
  verify->add_option("--dists", c.verify.dists_per_cell, "random P per cell")->capture_default_str();
  verify->add_option("--eps-points", c.verify.eps_points)->capture_default_str();
  verify->add_option("--seed", c.verify.seed)->capture_default_str();
  verify->add_flag("--conjectures", c.verify.conjectures, "report the unproven bounds too");
  verify->add_flag("--inject-bug", c.verify.inject_bug, "self-test: break one bound");

  // The figures default to bounds only; the MC series is opt-in.
  figures->preparse_callback([&c](std::size_t) { c.trials = 0; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  c.command = app.get_subcommands().front()->get_name();
  try {
    if (c.command == "verify") return run_verify(c.verify, out, err);
    if (c.command == "figures") return cmd_figures(c, out);
    Table t({});
    if (c.command == "bound") t = cmd_bound(c);
    else if (c.command == "thresh") t = cmd_thresh(c);
    else if (c.command == "compare") t = cmd_compare(c, err);
    else if (c.command == "oracle") t = cmd_oracle(c);
    else if (c.command == "mc-tail") t = cmd_mc_tail(c, err);
    else if (c.command == "mc-var") t = cmd_mc_var(c);
    else if (c.command == "gof") t = cmd_gof(c);
    else if (c.command == "l1") t = cmd_l1(c);
    emit(with_config(std::move(t), c), c, out);
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DistributionError& e) {
    err << "usage error: --dist: " << e.what() << '\n';
    return 2;
  } catch (const EnumerationLimitError& e) {
    err << "error: " << e.what() << " (raise " << kEnumerationCapEnv << ")\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace kltail::cli
