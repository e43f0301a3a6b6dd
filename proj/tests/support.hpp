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

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "netobliv/folding.hpp"
#include "netobliv/machine.hpp"

namespace netobliv::testing {

struct Step {
  Label label;
  std::vector<std::pair<VpIndex, VpIndex>> pairs;
};

inline Trace make_trace(std::uint64_t v, std::initializer_list<Step> steps) {
  Trace t;
  t.v = v;
  t.n = v;
  for (const auto& s : steps) {
    SuperstepRecord rec;
    rec.label = s.label;
    rec.seq = t.records.size();
    for (auto [a, b] : s.pairs) rec.pairs.push_back({a, b, false});
    t.records.push_back(std::move(rec));
  }
  return t;
}

// Degree of one superstep folded onto p, recounted from the raw pairs.
inline std::uint64_t brute_degree(const Trace& t, const SuperstepRecord& rec, std::uint64_t p) {
  const std::uint64_t block = t.v / p;
  unsigned logp = 0;
  while ((std::uint64_t{1} << logp) < p) ++logp;
  if (rec.label >= logp) return 0;
  std::map<std::uint64_t, std::uint64_t> out, in;
  for (const auto& pr : rec.pairs) {
    const std::uint64_t a = pr.src / block, b = pr.dst / block;
    if (a == b) continue;
    ++out[a];
    ++in[b];
  }
  std::uint64_t h = 0;
  for (const auto& [k, c] : out) h = std::max(h, c);
  for (const auto& [k, c] : in) h = std::max(h, c);
  return h;
}

inline DegreeProfile brute_profile(const Trace& t, std::uint64_t p) {
  unsigned logp = 0;
  while ((std::uint64_t{1} << logp) < p) ++logp;
  DegreeProfile d;
  d.p = p;
  const std::size_t slots = std::max(1u, logp);
  d.S.assign(slots, 0);
  d.F.assign(slots, 0);
  for (const auto& rec : t.records) {
    if (rec.label < slots) ++d.S[rec.label];
    if (rec.label < logp) d.F[rec.label] += brute_degree(t, rec, p);
  }
  return d;
}

// H recomputed in floating point from a brute-force profile.
inline double brute_h(const Trace& t, std::uint64_t p, double sigma) {
  const auto d = brute_profile(t, p);
  double h = 0;
  for (std::size_t i = 0; i < d.S.size(); ++i) h += static_cast<double>(d.F[i]) + sigma * static_cast<double>(d.S[i]);
  return h;
}

}  // namespace netobliv::testing
