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
#include <vector>

#include "netobliv/machine.hpp"

namespace netobliv {

struct FoldedRecord {
  Label label = 0;
  bool local = false;
  std::vector<std::uint64_t> sent;      // per processor, intra-processor traffic excluded
  std::vector<std::uint64_t> received;
};

struct FoldedTrace {
  std::uint64_t p = 1;
  const Trace* base = nullptr;
  std::vector<FoldedRecord> records;
};

struct DegreeProfile {
  std::uint64_t p = 1;
  std::vector<std::uint64_t> S;
  std::vector<std::uint64_t> F;

  std::size_t slots() const { return S.size(); }
  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

// Processor owning VP r when v VPs are folded onto p processors.
constexpr std::uint64_t owner(VpIndex r, std::uint64_t v, std::uint64_t p) {
  return static_cast<std::uint64_t>(r) / (v / p);
}

FoldedTrace fold(const Trace& trace, std::uint64_t p);
std::uint64_t superstep_degree(const FoldedTrace& folded, std::uint64_t seq);
DegreeProfile degree_profile(const FoldedTrace& folded);

// Profile at p without materializing the folded trace.
DegreeProfile degree_profile(const Trace& trace, std::uint64_t p);

// Profiles at every p = 2^j, 0 <= j <= log v, indexed by j.
std::vector<DegreeProfile> all_degree_profiles(const Trace& trace);

// Degree of every superstep at p = 2^j for all j, indexed [seq][j].
std::vector<std::vector<std::uint64_t>> superstep_degrees_all_levels(const Trace& trace);

void write_profile_csv(std::ostream& os, const DegreeProfile& profile, bool header = true);

}  // namespace netobliv
