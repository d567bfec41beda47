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
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kltail/bounds.hpp"
#include "kltail/cli/commands.hpp"
#include "kltail/cli/figures.hpp"
#include "kltail/cli/grid.hpp"
#include "kltail/cli/table.hpp"

namespace kltail::cli {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "kltail");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> v;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      v.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  v.push_back(cur);
  return v;
}

// Data rows of a CSV keyed by the first column.
std::vector<std::vector<std::string>> rows_named(const std::string& csv, const std::string& name) {
  std::vector<std::vector<std::string>> out;
  for (const auto& l : lines(csv)) {
    if (l.empty() || l[0] == '#') continue;
    auto f = split(l);
    if (f[0] == name) out.push_back(f);
  }
  return out;
}

TEST(Table, CsvDialect) {
  Table t({"a", "b,c", "d"});
  t.add_comment("config x=1");
  t.add_row({std::string("x\"y"), 0.1, std::int64_t{3}});
  t.add_row({std::string("z"), true, 1e300});
  std::ostringstream s;
  t.write_csv(s);
  EXPECT_EQ(s.str(),
            "# config x=1\n"
            "a,\"b,c\",d\n"
            "\"x\"\"y\",0.10000000000000001,3\n"
            "z,true,1.0000000000000001e+300\n");
  EXPECT_THROW(t.add_row({0.0}), std::logic_error);
}

TEST(Table, JsonRoundTrip) {
  Table t({"name", "v", "bad"});
  t.add_row({std::string("q"), 0.1, std::nan("")});
  std::ostringstream s;
  t.write_json(s);
  const auto j = nlohmann::json::parse(s.str());
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["name"], "q");
  EXPECT_EQ(j[0]["v"].get<double>(), 0.1);
  EXPECT_TRUE(j[0]["bad"].is_null());
  EXPECT_NE(s.str().find("0.10000000000000001"), std::string::npos);
}

TEST(Grid, Parse) {
  const auto a = parse_eps_grid("0:1:5");
  EXPECT_EQ(a, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  const auto b = parse_eps_grid("0.01:100:5:log");
  EXPECT_NEAR(b[2], 1.0, 1e-12);
  EXPECT_EQ(b.front(), 0.01);
  EXPECT_EQ(b.back(), 100.0);
  EXPECT_EQ(parse_eps_grid("2:2:1"), std::vector<double>{2.0});
  EXPECT_THROW(parse_eps_grid("0:1"), std::invalid_argument);
  EXPECT_THROW(parse_eps_grid("0:1:0"), std::invalid_argument);
  EXPECT_THROW(parse_eps_grid("0:1:3:log"), std::invalid_argument);
  EXPECT_THROW(parse_eps_grid("0:1:3:cubic"), std::invalid_argument);
  EXPECT_EQ(parse_eps_grid("0:1:7"), parse_eps_grid("0:1:7"));
}

TEST(BoundCommand, Fig1Regime) {
  const auto r = run({"bound", "--n", "1000", "--k", "31", "--eps", "0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto mot = rows_named(r.out, "mot");
  const auto thm1 = rows_named(r.out, "thm1_exact");
  ASSERT_EQ(mot.size(), 1u);
  ASSERT_EQ(thm1.size(), 1u);
  EXPECT_LT(std::stod(thm1[0][3]), std::stod(mot[0][3]));
  EXPECT_EQ(lines(r.out)[0].rfind("# kltail " KLTAIL_VERSION " bound", 0), 0u);
}

TEST(BoundCommand, BinaryAtZero) {
  const auto r = run({"bound", "--n", "10", "--k", "2", "--eps", "0"});
  ASSERT_EQ(r.code, 0);
  const auto b = rows_named(r.out, "binary");
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(std::stod(b[0][2]), 2.0);
}

TEST(BoundCommand, PiecewiseRowFour) {
  const auto r = run({"bound", "--n", "20", "--k", "100", "--eps", "3"});
  ASSERT_EQ(r.code, 0);
  const auto b = rows_named(r.out, "thm1_piecewise");
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0][6], "row 4");
}

TEST(BoundCommand, GridRowsInOrder) {
  const auto r = run({"bound", "--n", "30", "--k", "4", "--eps-grid", "0:1:3", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.front()["bound_name"], "mot");
  EXPECT_EQ(j.front()["eps"], 0.0);
  EXPECT_EQ(j.back()["eps"], 1.0);
  EXPECT_EQ(j.back()["bound_name"], "best");
}

TEST(Usage, ErrorsNameTheField) {
  auto r = run({"bound", "--k", "3", "--eps", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--n"), std::string::npos);
  r = run({"bound", "--n", "3", "--k", "1", "--eps", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--k"), std::string::npos);
  r = run({"bound", "--n", "3", "--k", "3", "--eps", "-1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--eps"), std::string::npos);
  r = run({"oracle", "--n", "3", "--k", "3", "--eps", "0.1", "--dist", "0.5,0.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--dist"), std::string::npos);
  r = run({"bound", "--n", "3", "--k", "3", "--eps", "1", "--format", "xml"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("--format"), std::string::npos);
  r = run({"nonsense"});
  EXPECT_EQ(r.code, 2);
}

TEST(OracleCommand, UniformExpands) {
  const auto r = run({"oracle", "--n", "7", "--k", "2", "--eps", "0.6931471805599453"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  const auto f = split(l.back());
  EXPECT_NEAR(std::stod(f[1]), 1.0 / 64, 1e-15);
  EXPECT_EQ(f[3], "8");
}

TEST(OracleCommand, CapOverride) {
  ::setenv("KLTAIL_ENUM_CAP", "5", 1);
  const auto r = run({"oracle", "--n", "7", "--k", "3", "--eps", "0.1"});
  ::unsetenv("KLTAIL_ENUM_CAP");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("KLTAIL_ENUM_CAP"), std::string::npos);
}

TEST(McCommands, Smoke) {
  auto r = run({"mc-tail", "--n", "7", "--k", "2", "--eps", "0.5", "--trials", "2000", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"mc-var", "--n", "7", "--k", "3", "--trials", "2000"});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"gof", "--n", "100", "--k", "3", "--trials", "2000", "--model", "poisson"});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"mc-tail", "--n", "7", "--k", "2", "--eps", "5", "--trials", "100"});
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  r = run({"thresh", "--n", "1000000", "--k", "10"});
  ASSERT_EQ(r.code, 0);
  r = run({"l1", "--n", "20", "--k", "40"});
  ASSERT_EQ(r.code, 0);
  r = run({"compare", "--n", "8", "--k", "3", "--eps-grid", "0:0.5:3", "--trials", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
}

TEST(Figures, ClampedAndLabelled) {
  for (const auto& id : figure_ids()) {
    FigureConfig c;
    c.id = id;
    const auto t = figure_table(c);
    ASSERT_FALSE(t.comments().empty());
    EXPECT_NE(t.comments()[0].find("kltail " KLTAIL_VERSION), std::string::npos);
    for (const auto& row : t.rows()) {
      for (std::size_t i = 1; i < row.size(); ++i) {
        const double v = std::get<double>(row[i]);
        EXPECT_LE(v, 0.0) << id;
      }
    }
  }
  FigureConfig bad;
  bad.id = "fig8";
  EXPECT_THROW(figure_table(bad), std::invalid_argument);
}

TEST(Figures, Fig5SweepsN) {
  FigureConfig c;
  c.id = "fig5";
  const auto t = figure_table(c);
  EXPECT_EQ(t.columns()[0], "n");
  EXPECT_EQ(std::get<std::int64_t>(t.rows().front()[0]), 1000);
  EXPECT_EQ(std::get<std::int64_t>(t.rows().back()[0]), 1600);
  // Both curves sit far below 0 here; Theorem 1 stays under the method of types,
  // and log prefactor(thm1) / log prefactor(mot) shrinks as n decreases.
  double prev_ratio = 0.0;
  for (const auto& row : t.rows()) {
    const auto n = static_cast<std::uint64_t>(std::get<std::int64_t>(row[0]));
    EXPECT_LT(std::get<double>(row[2]), std::get<double>(row[1]));
    const double ratio = thm1_exact(n, 1000, 0.0).log_value / mot_bound(n, 1000, 0.0).log_value;
    EXPECT_GT(ratio, prev_ratio);
    prev_ratio = ratio;
  }
}

TEST(Figures, L1FiguresUsePlainPinsker) {
  FigureConfig c;
  c.id = "fig6";
  const auto t = figure_table(c);
  // At eps = 1 the Weissman exponent is k log 2 - n phi / 4 with phi = 2.
  const auto& row = t.rows()[50];
  EXPECT_DOUBLE_EQ(std::get<double>(row[0]), 1.0);
  EXPECT_NEAR(std::get<double>(row[1]), std::min(0.0, 100 * std::log(2.0) + std::log1p(-std::pow(2.0, -99)) - 45.0), 1e-9);
  c.id = "fig7";
  EXPECT_EQ(figure_table(c).rows().size(), 101u);
}

TEST(Figures, DeterministicAcrossWorkers) {
  std::string first;
  for (unsigned w : {1u, 8u, 1u}) {
    FigureConfig c;
    c.id = "fig7";
    c.trials = 3000;
    c.seed = 17;
    c.workers = w;
    std::ostringstream s;
    figure_table(c).write_csv(s);
    if (first.empty()) {
      first = s.str();
      EXPECT_NE(first.find("log_mc_estimate"), std::string::npos);
    } else {
      EXPECT_EQ(s.str(), first);
    }
  }
}

TEST(VerifyCommand, DefaultPasses) {
  const auto r = run({"verify"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("PASS kl_tail<=thm1_exact"), std::string::npos);
}

TEST(VerifyCommand, InjectedBugIsCaught) {
  const auto r = run({"verify", "--inject-bug"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("COUNTEREXAMPLE"), std::string::npos);
}

TEST(VerifyCommand, ConjecturesAreReportOnly) {
  const auto r = run({"verify", "--conjectures", "--n-max", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("conjectures (report only)"), std::string::npos);
}

}  // namespace
}  // namespace kltail::cli
