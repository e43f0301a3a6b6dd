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

#include "netobliv/folding.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

namespace netobliv {

namespace {

void check_p(const Trace& trace, std::uint64_t p) {
  require_pow2(p, "p");
  if (p > trace.v) {
    throw PreconditionError("cannot fold v=" + std::to_string(trace.v) + " onto p=" +
                            std::to_string(p));
  }
}

DegreeProfile empty_profile(std::uint64_t p) {
  DegreeProfile d;
  d.p = p;
  const std::size_t slots = std::max(1u, ilog2(p));
  d.S.assign(slots, 0);
  d.F.assign(slots, 0);
  return d;
}

// Number of leading index bits shared by a and b within a `bits`-bit index.
unsigned common_prefix(VpIndex a, VpIndex b, unsigned bits) {
  const std::uint32_t x = a ^ b;
  if (x == 0) return bits;
  return bits - static_cast<unsigned>(std::bit_width(x));
}

}  // namespace

FoldedTrace fold(const Trace& trace, std::uint64_t p) {
  check_p(trace, p);
  FoldedTrace out;
  out.p = p;
  out.base = &trace;
  const unsigned logp = ilog2(p);
  out.records.reserve(trace.records.size());
  for (const auto& rec : trace.records) {
    FoldedRecord fr;
    fr.label = rec.label;
    fr.local = rec.label >= logp;
    fr.sent.assign(p, 0);
    fr.received.assign(p, 0);
    if (!fr.local) {
      for (const Pair& pr : rec.pairs) {
        const auto a = owner(pr.src, trace.v, p);
        const auto b = owner(pr.dst, trace.v, p);
        if (a == b) continue;
        ++fr.sent[a];
        ++fr.received[b];
      }
    }
    out.records.push_back(std::move(fr));
  }
  return out;
}

std::uint64_t superstep_degree(const FoldedTrace& folded, std::uint64_t seq) {
  const auto& fr = folded.records.at(seq);
  if (fr.local) return 0;
  std::uint64_t h = 0;
  for (std::size_t j = 0; j < fr.sent.size(); ++j) h = std::max({h, fr.sent[j], fr.received[j]});
  return h;
}

DegreeProfile degree_profile(const FoldedTrace& folded) {
  DegreeProfile d = empty_profile(folded.p);
  const unsigned logp = ilog2(folded.p);
  for (std::size_t s = 0; s < folded.records.size(); ++s) {
    const Label i = folded.records[s].label;
    if (i < d.slots()) ++d.S[i];
    if (i < logp) d.F[i] += superstep_degree(folded, s);
  }
  return d;
}

std::vector<std::vector<std::uint64_t>> superstep_degrees_all_levels(const Trace& trace) {
  const unsigned b = ilog2(trace.v);
  std::vector<std::vector<std::uint64_t>> deg(trace.records.size(),
                                              std::vector<std::uint64_t>(b + 1, 0));
  // counters[j] has 2^j sent and 2^j received slots.
  std::vector<std::vector<std::uint64_t>> sent(b + 1), recv(b + 1);
  for (unsigned j = 0; j <= b; ++j) {
    sent[j].assign(std::uint64_t{1} << j, 0);
    recv[j].assign(std::uint64_t{1} << j, 0);
  }
  for (std::size_t s = 0; s < trace.records.size(); ++s) {
    const auto& rec = trace.records[s];
    for (const Pair& pr : rec.pairs) {
      const unsigned c = common_prefix(pr.src, pr.dst, b);
      for (unsigned j = c + 1; j <= b; ++j) {
        ++sent[j][pr.src >> (b - j)];
        ++recv[j][pr.dst >> (b - j)];
      }
    }
    for (unsigned j = 1; j <= b; ++j) {
      std::uint64_t h = 0;
      if (rec.label < j) {
        for (std::size_t q = 0; q < sent[j].size(); ++q) h = std::max({h, sent[j][q], recv[j][q]});
      }
      deg[s][j] = h;
    }
    for (const Pair& pr : rec.pairs) {
      const unsigned c = common_prefix(pr.src, pr.dst, b);
      for (unsigned j = c + 1; j <= b; ++j) {
        sent[j][pr.src >> (b - j)] = 0;
        recv[j][pr.dst >> (b - j)] = 0;
      }
    }
  }
  return deg;
}

std::vector<DegreeProfile> all_degree_profiles(const Trace& trace) {
  const unsigned b = ilog2(trace.v);
  const auto deg = superstep_degrees_all_levels(trace);
  std::vector<DegreeProfile> out;
  for (unsigned j = 0; j <= b; ++j) out.push_back(empty_profile(std::uint64_t{1} << j));
  for (std::size_t s = 0; s < trace.records.size(); ++s) {
    const Label i = trace.records[s].label;
    for (unsigned j = 0; j <= b; ++j) {
      if (i < out[j].slots()) ++out[j].S[i];
      if (i < j) out[j].F[i] += deg[s][j];
    }
  }
  return out;
}

DegreeProfile degree_profile(const Trace& trace, std::uint64_t p) {
  check_p(trace, p);
  return all_degree_profiles(trace).at(ilog2(p));
}

void write_profile_csv(std::ostream& os, const DegreeProfile& profile, bool header) {
  if (header) os << "p,i,S_i,F_i\n";
  for (std::size_t i = 0; i < profile.slots(); ++i) {
    os << profile.p << ',' << i << ',' << profile.S[i] << ',' << profile.F[i] << '\n';
  }
}

}  // namespace netobliv
