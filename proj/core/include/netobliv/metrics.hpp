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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "netobliv/folding.hpp"
#include "netobliv/machine.hpp"

namespace netobliv {

struct EvalParams {
  std::uint64_t p = 2;
  Rational sigma{0};
};

struct DbspParams {
  std::uint64_t p = 2;
  std::vector<Rational> g;
  std::vector<Rational> l;

  // g_i >= g_{i+1} and l_i/g_i >= l_{i+1}/g_{i+1}.
  bool preconditions_hold() const;

  static DbspParams flat(std::uint64_t p, Rational g = 1, Rational l = 0);
  // g_i = g0 / ratio^i, l_i = l0 / ratio^i.
  static DbspParams geometric(std::uint64_t p, Rational ratio, Rational g0, Rational l0 = 0);
  static DbspParams bsp(std::uint64_t p, Rational sigma);
};

struct MetricsReport {
  std::uint64_t n = 0;
  DegreeProfile profile;
  Rational H{0};
  Rational D{0};
  std::optional<Rational> alpha;
  std::optional<Rational> gamma;
};

// Per-index bounds; entries may be +infinity.
struct SigmaRange {
  std::vector<double> lo;
  std::vector<double> hi;
};

Rational comm_complexity(const DegreeProfile& profile, const EvalParams& params);
Rational comm_time(const DegreeProfile& profile, const DbspParams& params);

Rational estimate_wiseness(const Trace& trace, std::uint64_t p);
Rational estimate_fullness(const Trace& trace, std::uint64_t p);
bool check_lemma1(const Trace& trace, std::uint64_t p);
// Same inequality over precomputed profiles indexed by log2 of the processor count.
bool check_lemma1(const std::vector<DegreeProfile>& profiles, std::uint64_t p);

MetricsReport make_report(const Trace& trace, const EvalParams& eval,
                          const std::optional<DbspParams>& dbsp = std::nullopt);

enum class Dominance { Holds, Violated, NotApplicable };

Dominance check_dominance(const std::vector<Rational>& X, const std::vector<Rational>& Y,
                          const std::vector<Rational>& f);

struct Theorem1Check {
  bool ok = false;
  bool g_monotone = false;
  bool ratio_monotone = false;
  bool range_nonempty = false;
  bool ratios_in_range = false;
  double lower = 0;
  double upper = 0;
  std::function<double(double, double)> factor;
};

Theorem1Check check_theorem1_preconditions(const DbspParams& params, const SigmaRange& range);

enum class CostKind { H, D };

Rational optimality_ratio(const MetricsReport& candidate, const MetricsReport& baseline,
                          CostKind kind = CostKind::H);

}  // namespace netobliv
