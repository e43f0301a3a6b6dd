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


#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "netobliv/common.hpp"
#include "netobliv/metrics.hpp"

namespace netobliv::cli {

// Malformed or inconsistent sweep configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

struct Preset {
  enum class Kind { Flat, Geometric, Custom };
  std::string name;
  Kind kind = Kind::Flat;
  Rational ratio{2};
  std::vector<Rational> g;
  std::vector<Rational> l;

  // flat: g_i = 1, l_i = sigma. geometric(r): g_i = r^-i, l_i = sigma r^-i.
  // custom: the first log p entries of g and l.
  DbspParams params(std::uint64_t p, const Rational& sigma) const;
};

enum class ProtocolMode { Standard, Novel };

struct GapConfig {
  std::uint64_t p = 0;
  double sigma1 = 0;
  double sigma2 = 0;
  std::vector<double> grid;
};

struct SweepConfig {
  std::string algorithm;
  std::vector<std::uint64_t> n;
  std::vector<std::uint64_t> p;
  std::vector<double> sigma{0};
  std::vector<Preset> presets;
  bool dummies = true;
  ProtocolMode protocol = ProtocolMode::Standard;
  std::string out = ".";
  std::uint64_t instances = 1;
  std::optional<std::uint64_t> seed;
  std::optional<double> min_alpha;
  SigmaRange range;  // per level; defaults to [0, +inf)
  std::optional<std::string> trace_file;
  std::optional<GapConfig> gap;
};

Rational to_rational(double x);

Preset parse_preset(const nlohmann::json& j);
SweepConfig parse_config(const nlohmann::json& j);
SweepConfig load_config(const std::string& path);

struct Row {
  std::string algo;
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  double sigma = 0;
  std::string preset;
  Rational H{0};
  Rational D{0};
  std::optional<Rational> alpha;
  std::optional<Rational> gamma;
  std::optional<double> bound_ratio;
  std::string protocol;
};

void sort_rows(std::vector<Row>& rows);
void write_csv(std::ostream& os, const std::vector<Row>& rows);
nlohmann::json rows_to_json(const std::vector<Row>& rows);

int cmd_run(const SweepConfig& cfg, bool check_only, std::ostream& log);
int cmd_verify(const SweepConfig& cfg, std::ostream& log);
int cmd_gap(const SweepConfig& cfg, std::ostream& log);

}  // namespace netobliv::cli
