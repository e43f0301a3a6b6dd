// Copyright 2026 The netobliv Authors
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


#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "sweep.hpp"

namespace netobliv::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path scratch_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("netobliv_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Drops the leading "# generated ..." line.
std::string body(const std::string& csv) { return csv.substr(csv.find('\n') + 1); }

TEST(Presets, Parsing) {
  const auto flat = parse_preset("flat");
  EXPECT_EQ(flat.kind, Preset::Kind::Flat);
  const auto geo = parse_preset("geometric(2)");
  EXPECT_EQ(geo.kind, Preset::Kind::Geometric);
  EXPECT_EQ(geo.ratio, Rational(2));
  EXPECT_EQ(parse_preset("geometric(1.5)").ratio, Rational(3, 2));
  const auto custom = parse_preset(json{{"name", "c"}, {"g", {4, 2}}, {"l", {1, 1}}});
  EXPECT_EQ(custom.kind, Preset::Kind::Custom);
  EXPECT_EQ(custom.params(4, Rational(0)).g, (std::vector<Rational>{Rational(4), Rational(2)}));
  EXPECT_THROW(parse_preset("mesh"), ConfigError);
  EXPECT_THROW(parse_preset("geometric(0)"), ConfigError);
  EXPECT_THROW(parse_preset(json{{"g", {1}}}), ConfigError);
  EXPECT_THROW(parse_preset(json{{"g", {0}}, {"l", {0}}}), ConfigError);
  EXPECT_THROW(parse_preset(json(3)), ConfigError);
}

TEST(Presets, FlatAndGeometricParams) {
  const auto flat = parse_preset("flat").params(8, Rational(5));
  EXPECT_EQ(flat.g, (std::vector<Rational>(3, Rational(1))));
  EXPECT_EQ(flat.l, (std::vector<Rational>(3, Rational(5))));
  const auto geo = parse_preset("geometric(2)").params(8, Rational(4));
  EXPECT_EQ(geo.g[2], Rational(1, 4));
  EXPECT_EQ(geo.l[1], Rational(2));
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config(json::array()), ConfigError);
  EXPECT_THROW(parse_config(json{{"protocol", "fast"}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"p", "four"}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"instances", 0}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"p", {4}}, {"sigma_range", {{"lo", {0}}}}}), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/netobliv.json"), ConfigError);
}

TEST(Config, ValidationAtRunTime) {
  const auto dir = scratch_dir("validate");
  std::ostringstream log;
  auto cfg = parse_config(json{{"algorithm", "fft"}, {"n", {16}}, {"p", json::array()}, {"out", dir.string()}});
  EXPECT_THROW(cmd_run(cfg, true, log), ConfigError);
  cfg.p = {3};
  EXPECT_THROW(cmd_run(cfg, true, log), ConfigError);
  cfg.p = {32};
  EXPECT_THROW(cmd_run(cfg, true, log), ConfigError);
  cfg.p = {4};
  cfg.sigma = {-1};
  EXPECT_THROW(cmd_run(cfg, true, log), ConfigError);
  cfg.sigma = {0};
  cfg.n = {12};
  EXPECT_THROW(cmd_run(cfg, true, log), ConfigError);
  cfg.n = {16};
  EXPECT_EQ(cmd_run(cfg, true, log), kOk);
  cfg.algorithm = "nope";
  EXPECT_ANY_THROW(cmd_run(cfg, true, log));
}

TEST(Run, CsvIsDeterministic) {
  const auto a = scratch_dir("csv_a");
  const auto b = scratch_dir("csv_b");
  const json base{{"algorithm", "matmul"}, {"n", {64}}, {"p", {2, 8}}, {"sigma", {0, 4}},
                  {"presets", {"flat", "geometric(2)"}}, {"seed", 7}, {"instances", 2}};
  std::ostringstream log;
  auto ca = base;
  ca["out"] = a.string();
  auto cb = base;
  cb["out"] = b.string();
  ASSERT_EQ(cmd_run(parse_config(ca), false, log), kOk);
  ASSERT_EQ(cmd_run(parse_config(cb), false, log), kOk);
  const auto sa = slurp(a / "matmul.csv");
  EXPECT_EQ(sa.rfind("# generated", 0), 0u);
  EXPECT_EQ(body(sa), body(slurp(b / "matmul.csv")));
  std::istringstream is(body(sa));
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "algo,n,p,sigma,preset,H,D,alpha,gamma,bound_ratio,protocol");
  std::size_t rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  EXPECT_EQ(rows, 2u * 2u * 2u);
  const auto js = json::parse(slurp(a / "matmul.json"));
  EXPECT_EQ(js["algorithm"], "matmul");
  EXPECT_EQ(js["seed"], 7);
  EXPECT_EQ(js["rows"].size(), rows);
}

TEST(Run, RowsSortByKey) {
  std::vector<Row> rows(2);
  rows[0].algo = "fft";
  rows[0].p = 8;
  rows[1].algo = "fft";
  rows[1].p = 2;
  sort_rows(rows);
  EXPECT_EQ(rows[0].p, 2u);
}

TEST(Verify, PassesOnMatmulAndFailsOnRisingBandwidth) {
  std::ostringstream log;
  auto cfg = parse_config(json{{"algorithm", "matmul"}, {"n", {64}}, {"p", {8}}, {"min_alpha", 0.25},
                               {"presets", {"geometric(2)"}}, {"sigma", {0, 8}}});
  EXPECT_EQ(cmd_verify(cfg, log), kOk) << log.str();
  EXPECT_NE(log.str().find("PASS"), std::string::npos);
  EXPECT_EQ(log.str().find("FAIL"), std::string::npos);
  std::ostringstream log2;
  cfg.presets = {parse_preset(json{{"name", "up"}, {"g", {1, 2, 4}}, {"l", {0, 0, 0}}})};
  EXPECT_EQ(cmd_verify(cfg, log2), kFailure);
  EXPECT_NE(log2.str().find("FAIL"), std::string::npos);
}

TEST(Gap, TableIsMonotone) {
  const auto dir = scratch_dir("gap");
  std::ostringstream log;
  const auto cfg = parse_config(json{{"out", dir.string()}, {"gap", {{"p", 64}, {"sigma2", 64}}}});
  ASSERT_EQ(cmd_gap(cfg, log), kOk);
  std::istringstream is(slurp(dir / "gap.csv"));
  std::string line;
  std::getline(is, line);
  if (line.rfind("#", 0) == 0) std::getline(is, line);
  EXPECT_EQ(line, "p,sigma,H_oblivious,H_aware,ratio,gap,lower_bound");
  double prev = 0;
  for (; std::getline(is, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 7u);
    const double gap = std::stod(cells[5]);
    EXPECT_GE(gap, prev);
    prev = gap;
  }
  EXPECT_GT(prev, 1.0);
}

}  // namespace
}  // namespace netobliv::cli
