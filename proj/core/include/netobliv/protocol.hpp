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
#include <string>
#include <vector>

#include "netobliv/folding.hpp"
#include "netobliv/machine.hpp"
#include "netobliv/metrics.hpp"

namespace netobliv {

enum class PrefixStrategy {
  Tree,          // every round labeled with the cluster level
  Hierarchical,  // round t labeled with the smallest cluster containing its pairs
};

enum class ProtocolPhase { AscendPrefix, AscendMove, DescendPrefix, DescendMove };

const char* phase_name(ProtocolPhase phase);

struct ProtocolTag {
  std::uint64_t origin_seq = 0;
  ProtocolPhase phase = ProtocolPhase::AscendPrefix;
  unsigned k = 0;
};

// Supersteps generated on M(p); tags[i] describes trace.records[i].
struct ProtocolTrace {
  std::string algorithm;
  std::uint64_t p = 1;
  Trace trace;
  std::vector<ProtocolTag> tags;
};

// Trace JSONL with {"origin_seq", "phase", "k"} added to every record line.
void write_protocol_trace_jsonl(std::ostream& os, const ProtocolTrace& pt);

struct PrefixRun {
  std::vector<std::int64_t> prefix;  // inclusive
  Trace trace;                       // generated supersteps on M(values.size())
};

// Tree prefix (up-sweep then down-sweep) over one cluster holding `values`.
PrefixRun prefix_within_cluster(const std::vector<std::int64_t>& values,
                                PrefixStrategy strategy = PrefixStrategy::Tree);

// Delivers each superstep through ascend/descend spreading over p processors.
class NovelRouter : public Router {
 public:
  explicit NovelRouter(std::uint64_t p, PrefixStrategy strategy = PrefixStrategy::Tree);

  std::vector<Message> route(const SuperstepRecord& record, std::uint64_t v,
                             std::vector<Message> messages) override;

  const ProtocolTrace& protocol_trace() const { return pt_; }
  ProtocolTrace take_protocol_trace() { return std::move(pt_); }

  // Largest spread (max - min) of dealt messages per processor inside any
  // cluster after an ascend iteration.
  std::uint64_t max_ascend_spread() const { return max_spread_; }

 private:
  void emit(Label label, std::vector<Pair> pairs, ProtocolTag tag);
  std::vector<std::vector<std::int64_t>> prefix(unsigned k, std::vector<std::vector<std::int64_t>> lanes,
                                                std::uint64_t origin, ProtocolPhase phase);

  std::uint64_t p_;
  unsigned logp_;
  PrefixStrategy strategy_;
  ProtocolTrace pt_;
  std::uint64_t max_spread_ = 0;
};

template <class Out>
struct NovelResult {
  Out output;
  Trace base;
  ProtocolTrace protocol;
  Rational D{0};           // generated supersteps on D-BSP(p, g, l)
  Rational standard_D{0};  // plain folding of the base trace
};

template <class In, class Out>
NovelResult<Out> execute_novel(const AlgorithmSpec<In, Out>& spec, const In& input, std::uint64_t p,
                               const DbspParams& params,
                               PrefixStrategy strategy = PrefixStrategy::Tree) {
  NovelRouter router(p, strategy);
  auto res = run(spec, input, &router);
  NovelResult<Out> out{std::move(res.output), std::move(res.trace), router.take_protocol_trace()};
  out.protocol.algorithm = spec.problem;
  out.D = comm_time(degree_profile(out.protocol.trace, p), params);
  out.standard_D = comm_time(degree_profile(out.base, p), params);
  return out;
}

struct Lemma6Constants {
  double c1 = 2;  // count of large-degree k-supersteps
  double c2 = 4;  // large degree relative to ceil(2^k h / p)
  double c3 = 4;  // count of small-degree k-supersteps, times log p
  double c4 = 2;  // small degree
};

struct Lemma6Report {
  bool ok = true;
  Lemma6Constants constants;
  double max_large_count = 0;
  double max_large_ratio = 0;
  double max_small_count_per_logp = 0;
  double max_small_degree = 0;
  std::string first_failure;
};

Lemma6Report check_lemma6(const ProtocolTrace& pt, const Trace& base, std::uint64_t p,
                          Lemma6Constants constants = {});

struct FullnessPoint {
  unsigned j = 0;
  double sigma = 0;
  Rational H_novel{0};
  Rational H_base{0};
  double c = 0;  // H_novel / ((1 + 1/gamma) log^2 p H_base)
};

struct FullnessOptimalityReport {
  Rational gamma{0};
  double log_sq_p = 1;  // (log p)^2
  double beta_factor = 0;  // 1 / ((1 + 1/gamma) log^2 p), to be scaled by beta
  double max_c = 0;
  std::vector<FullnessPoint> points;
};

// Throws MetricUndefined when fullness is undefined for the base trace.
FullnessOptimalityReport fullness_optimality_report(const Trace& base, const ProtocolTrace& pt,
                                                    std::uint64_t p, const SigmaRange& range);

// VP 0 sends every input word to VP n/2 in one 0-superstep.
AlgorithmSpec<std::vector<std::uint64_t>, std::vector<std::uint64_t>> single_sender_spec();

// VP r sends its word to VP r xor n/2 in one 0-superstep.
AlgorithmSpec<std::vector<std::uint64_t>, std::vector<std::uint64_t>> balanced_matching_spec();

}  // namespace netobliv
