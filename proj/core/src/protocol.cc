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

#include "netobliv/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "netobliv/algorithms/common.hpp"
#include "netobliv/trace_io.hpp"

namespace netobliv {

namespace {

using Lanes = std::vector<std::vector<std::int64_t>>;
using Emit = std::function<void(Label, std::vector<Pair>)>;

// Inclusive prefix of every lane inside each k-cluster of a 2^logp machine.
void prefix_schedule(unsigned logp, unsigned k, Lanes& s, PrefixStrategy strategy, const Emit& emit) {
  const unsigned m = logp - k;
  const std::uint64_t p = std::uint64_t{1} << logp, P = std::uint64_t{1} << m;
  auto round = [&](unsigned l, bool up) {
    const std::uint64_t step = std::uint64_t{1} << l, span = step << 1;
    std::vector<Pair> pairs;
    for (std::uint64_t base = 0; base < p; base += P) {
      for (std::uint64_t q = 0; q < P; ++q) {
        const bool hit = up ? (q % span == span - 1) : (q >= span + step - 1 && (q + 1 - step) % span == 0);
        if (!hit) continue;
        const auto src = static_cast<VpIndex>(base + q - step), dst = static_cast<VpIndex>(base + q);
        pairs.push_back({src, dst, false});
        for (auto& lane : s) lane[dst] += lane[src];
      }
    }
    emit(strategy == PrefixStrategy::Tree ? k : logp - l - 1, std::move(pairs));
  };
  if (strategy == PrefixStrategy::Tree) {
    for (unsigned l = 0; l < m; ++l) round(l, true);
    for (unsigned l = m; l-- > 1;) round(l - 1, false);
    return;
  }
  // Up-sweep, then a swap down-sweep that stays inside aligned blocks; the
  // exclusive result plus the own value gives the inclusive one.
  const Lanes own = s;
  for (unsigned l = 0; l < m; ++l) round(l, true);
  for (auto& lane : s) {
    for (std::uint64_t base = 0; base < p; base += P) lane[base + P - 1] = 0;
  }
  for (unsigned l = m; l-- > 0;) {
    const std::uint64_t step = std::uint64_t{1} << l, span = step << 1;
    std::vector<Pair> pairs;
    for (std::uint64_t b = 0; b < p; b += span) {
      const auto L = static_cast<VpIndex>(b + step - 1), R = static_cast<VpIndex>(b + span - 1);
      pairs.push_back({L, R, false});
      pairs.push_back({R, L, false});
      for (auto& lane : s) {
        const auto left = lane[L];
        lane[L] = lane[R];
        lane[R] += left;
      }
    }
    emit(logp - l - 1, std::move(pairs));
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::uint64_t q = 0; q < p; ++q) s[i][q] += own[i][q];
  }
}

std::uint64_t record_degree(const SuperstepRecord& rec, std::uint64_t v) {
  std::vector<std::uint64_t> out(v, 0), in(v, 0);
  std::uint64_t h = 0;
  for (const auto& pr : rec.pairs) {
    if (pr.src == pr.dst) continue;
    h = std::max({h, ++out[pr.src], ++in[pr.dst]});
  }
  return h;
}

}  // namespace

const char* phase_name(ProtocolPhase phase) {
  switch (phase) {
    case ProtocolPhase::AscendPrefix: return "ascend_prefix";
    case ProtocolPhase::AscendMove: return "ascend_move";
    case ProtocolPhase::DescendPrefix: return "descend_prefix";
    case ProtocolPhase::DescendMove: return "descend_move";
  }
  return "unknown";
}

void write_protocol_trace_jsonl(std::ostream& os, const ProtocolTrace& pt) {
  using nlohmann::json;
  os << json{{"v", pt.trace.v}, {"n", pt.trace.n}, {"p", pt.p}, {"algorithm", pt.algorithm}}.dump() << '\n';
  for (std::size_t i = 0; i < pt.trace.records.size(); ++i) {
    json j = json::parse(record_to_json_line(pt.trace.records[i]));
    j["origin_seq"] = pt.tags[i].origin_seq;
    j["phase"] = phase_name(pt.tags[i].phase);
    j["k"] = pt.tags[i].k;
    os << j.dump() << '\n';
  }
}

PrefixRun prefix_within_cluster(const std::vector<std::int64_t>& values, PrefixStrategy strategy) {
  require_pow2(values.size(), "cluster size");
  PrefixRun out;
  const unsigned logp = ilog2(values.size());
  out.trace.v = values.size();
  Lanes s{values};
  prefix_schedule(logp, 0, s, strategy, [&](Label label, std::vector<Pair> pairs) {
    SuperstepRecord rec;
    rec.label = label;
    rec.seq = out.trace.records.size();
    rec.pairs = std::move(pairs);
    out.trace.records.push_back(std::move(rec));
  });
  out.prefix = std::move(s.front());
  return out;
}

NovelRouter::NovelRouter(std::uint64_t p, PrefixStrategy strategy)
    : p_(p), logp_(0), strategy_(strategy) {
  require_pow2(p, "p");
  logp_ = ilog2(p);
  pt_.p = p;
  pt_.trace.v = p;
}

void NovelRouter::emit(Label label, std::vector<Pair> pairs, ProtocolTag tag) {
  for (const auto& pr : pairs) {
    if (!same_cluster(pr.src, pr.dst, label, logp_)) {
      throw ClusterViolation(pt_.trace.records.size(), pr.src, pr.dst);
    }
  }
  SuperstepRecord rec;
  rec.label = label;
  rec.seq = pt_.trace.records.size();
  rec.pairs = std::move(pairs);
  pt_.trace.records.push_back(std::move(rec));
  pt_.tags.push_back(tag);
}

std::vector<std::vector<std::int64_t>> NovelRouter::prefix(unsigned k, Lanes lanes, std::uint64_t origin,
                                                           ProtocolPhase phase) {
  prefix_schedule(logp_, k, lanes, strategy_, [&](Label label, std::vector<Pair> pairs) {
    emit(label, std::move(pairs), {origin, phase, k});
  });
  return lanes;
}

std::vector<Message> NovelRouter::route(const SuperstepRecord& record, std::uint64_t v,
                                        std::vector<Message> messages) {
  if (pt_.trace.n == 0) pt_.trace.n = v;
  if (p_ > v) throw PreconditionError("novel protocol needs p <= v");
  const Label i = record.label;
  if (logp_ == 0 || i >= logp_) return messages;
  const std::uint64_t block = v / p_;
  const std::uint64_t origin = record.seq;

  std::vector<std::uint64_t> cur, dstp;
  std::vector<bool> dummy;
  std::vector<std::vector<std::uint32_t>> at(p_);
  for (const auto& msg : messages) {
    const std::uint64_t sp = msg.src / block, dp = msg.dst / block;
    if (sp == dp) continue;
    const auto t = static_cast<std::uint32_t>(cur.size());
    cur.push_back(sp);
    dstp.push_back(dp);
    dummy.push_back(msg.dummy);
    at[sp].push_back(t);
  }
  auto cluster = [&](std::uint64_t q, unsigned k) { return q >> (logp_ - k); };
  auto regroup = [&] {
    for (auto& list : at) list.clear();
    for (std::uint32_t t = 0; t < cur.size(); ++t) at[cur[t]].push_back(t);
  };

  for (unsigned k = logp_ - 1; k > i; --k) {
    const std::uint64_t P = p_ >> k;
    auto leaving = [&](std::uint32_t t) { return cluster(dstp[t], k) != cluster(cur[t], k); };
    Lanes lanes(1, std::vector<std::int64_t>(p_, 0));
    for (std::uint64_t q = 0; q < p_; ++q) {
      for (auto t : at[q]) lanes[0][q] += leaving(t) ? 1 : 0;
    }
    const Lanes pre = prefix(k, lanes, origin, ProtocolPhase::AscendPrefix);
    std::vector<Pair> pairs;
    std::vector<std::uint64_t> dealt(p_, 0);
    for (std::uint64_t q = 0; q < p_; ++q) {
      std::uint64_t rank = static_cast<std::uint64_t>(pre[0][q] - lanes[0][q]);
      for (auto t : at[q]) {
        if (!leaving(t)) continue;
        const std::uint64_t target = (q & ~(P - 1)) + (rank++ % P);
        if (target != q) pairs.push_back({static_cast<VpIndex>(q), static_cast<VpIndex>(target), dummy[t]});
        cur[t] = target;
        ++dealt[target];
      }
    }
    emit(k, std::move(pairs), {origin, ProtocolPhase::AscendMove, k});
    regroup();
    for (std::uint64_t base = 0; base < p_; base += P) {
      const auto [lo, hi] = std::minmax_element(dealt.begin() + static_cast<std::ptrdiff_t>(base),
                                                dealt.begin() + static_cast<std::ptrdiff_t>(base + P));
      max_spread_ = std::max(max_spread_, *hi - *lo);
    }
  }

  for (unsigned k = i; k < logp_; ++k) {
    const std::uint64_t half = (p_ >> k) / 2;
    auto lane_of = [&](std::uint32_t t) -> int {
      if (cluster(dstp[t], k + 1) == cluster(cur[t], k + 1)) return -1;
      return static_cast<int>((dstp[t] >> (logp_ - k - 1)) & 1u);
    };
    Lanes lanes(2, std::vector<std::int64_t>(p_, 0));
    for (std::uint64_t q = 0; q < p_; ++q) {
      for (auto t : at[q]) {
        const int b = lane_of(t);
        if (b >= 0) ++lanes[static_cast<std::size_t>(b)][q];
      }
    }
    const Lanes pre = prefix(k, lanes, origin, ProtocolPhase::DescendPrefix);
    std::vector<Pair> pairs;
    for (std::uint64_t q = 0; q < p_; ++q) {
      std::uint64_t rank[2] = {static_cast<std::uint64_t>(pre[0][q] - lanes[0][q]),
                               static_cast<std::uint64_t>(pre[1][q] - lanes[1][q])};
      const std::uint64_t base = q & ~(2 * half - 1);
      for (auto t : at[q]) {
        const int b = lane_of(t);
        if (b < 0) continue;
        const std::uint64_t target = base + static_cast<std::uint64_t>(b) * half + (rank[b]++ % half);
        pairs.push_back({static_cast<VpIndex>(q), static_cast<VpIndex>(target), dummy[t]});
        cur[t] = target;
      }
    }
    emit(k, std::move(pairs), {origin, ProtocolPhase::DescendMove, k});
    regroup();
  }

  for (std::size_t t = 0; t < cur.size(); ++t) {
    if (cur[t] != dstp[t]) throw ModelError("novel protocol left a message away from its destination");
  }
  return messages;
}

Lemma6Report check_lemma6(const ProtocolTrace& pt, const Trace& base, std::uint64_t p,
                          Lemma6Constants constants) {
  Lemma6Report rep;
  rep.constants = constants;
  const unsigned logp = ilog2(p);
  const double lg = log_conv(p);
  const auto deg = superstep_degrees_all_levels(base);
  std::vector<std::vector<std::size_t>> by_origin(base.records.size());
  for (std::size_t r = 0; r < pt.tags.size(); ++r) by_origin.at(pt.tags[r].origin_seq).push_back(r);

  auto fail = [&](const std::string& why) {
    if (rep.ok) rep.first_failure = why;
    rep.ok = false;
  };
  for (const auto& rec : base.records) {
    const unsigned i = rec.label;
    if (i >= logp) continue;
    for (unsigned k = i + 1; k < logp; ++k) {
      double ref = 0;
      for (unsigned kk : {k, k + 1}) {
        const double h = static_cast<double>(deg[rec.seq][kk]);
        ref = std::max(ref, std::ceil(std::ldexp(h, static_cast<int>(kk)) / static_cast<double>(p)));
      }
      double large = 0, small = 0;
      for (auto r : by_origin[rec.seq]) {
        const auto& g = pt.trace.records[r];
        if (g.label != k) continue;
        const double d = static_cast<double>(record_degree(g, p));
        const auto phase = pt.tags[r].phase;
        if (phase == ProtocolPhase::AscendMove || phase == ProtocolPhase::DescendMove) {
          ++large;
          const double ratio = ref > 0 ? d / ref : (d > 0 ? INFINITY : 0);
          rep.max_large_ratio = std::max(rep.max_large_ratio, ratio);
          if (ratio > constants.c2) {
            fail("superstep " + std::to_string(rec.seq) + ", k=" + std::to_string(k) + ": move degree too large");
          }
        } else {
          ++small;
          rep.max_small_degree = std::max(rep.max_small_degree, d);
          if (d > constants.c4) {
            fail("superstep " + std::to_string(rec.seq) + ", k=" + std::to_string(k) + ": prefix degree too large");
          }
        }
      }
      rep.max_large_count = std::max(rep.max_large_count, large);
      rep.max_small_count_per_logp = std::max(rep.max_small_count_per_logp, small / lg);
      if (large > constants.c1) {
        fail("superstep " + std::to_string(rec.seq) + ", k=" + std::to_string(k) + ": too many moves");
      }
      if (small > constants.c3 * lg) {
        fail("superstep " + std::to_string(rec.seq) + ", k=" + std::to_string(k) + ": too many prefix rounds");
      }
    }
  }
  return rep;
}

FullnessOptimalityReport fullness_optimality_report(const Trace& base, const ProtocolTrace& pt,
                                                    std::uint64_t p, const SigmaRange& range) {
  FullnessOptimalityReport rep;
  const unsigned logp = ilog2(p);
  if (range.lo.size() < logp || range.hi.size() < logp) {
    throw PreconditionError("sigma range shorter than log p");
  }
  rep.gamma = estimate_fullness(base, p);
  if (rep.gamma <= Rational(0)) throw MetricUndefined("fullness is zero");
  const double inv_gamma = 1.0 / to_double(rep.gamma);
  const double lg = log_conv(p);
  rep.log_sq_p = lg * lg;
  rep.beta_factor = 1.0 / ((1.0 + inv_gamma) * rep.log_sq_p);
  const auto base_profiles = all_degree_profiles(base);
  for (unsigned j = 1; j <= logp; ++j) {
    const std::uint64_t q = std::uint64_t{1} << j;
    const DegreeProfile novel = degree_profile(pt.trace, q);
    for (double sigma : {range.lo[j - 1], range.hi[j - 1]}) {
      if (!std::isfinite(sigma) || sigma < 0) continue;
      const Rational s(static_cast<std::int64_t>(std::llround(sigma * 1024)), 1024);
      FullnessPoint pt_;
      pt_.j = j;
      pt_.sigma = sigma;
      pt_.H_novel = comm_complexity(novel, {q, s});
      pt_.H_base = comm_complexity(base_profiles.at(j), {q, s});
      if (pt_.H_base == Rational(0)) continue;
      pt_.c = to_double(pt_.H_novel) / ((1.0 + inv_gamma) * rep.log_sq_p * to_double(pt_.H_base));
      rep.max_c = std::max(rep.max_c, pt_.c);
      rep.points.push_back(pt_);
    }
  }
  return rep;
}

namespace {

AlgorithmSpec<std::vector<std::uint64_t>, std::vector<std::uint64_t>> zero_superstep_spec(
    std::string name, bool single) {
  AlgorithmSpec<std::vector<std::uint64_t>, std::vector<std::uint64_t>> spec;
  spec.problem = std::move(name);
  spec.input_size = [](const std::vector<std::uint64_t>& in) { return static_cast<std::uint64_t>(in.size()); };
  spec.vp_count = [](std::uint64_t n) {
    require_pow2(n, "fixture size");
    if (n < 2) throw PreconditionError("fixture needs n >= 2");
    return n;
  };
  spec.program = [single](Machine& m, const std::vector<std::uint64_t>& in) {
    const std::uint64_t n = m.size();
    std::vector<std::uint64_t> out(n, 0);
    std::uint64_t filled = 0;
    Pipeline pl(m);
    pl.step(
        0,
        [&](VpContext& ctx) {
          const VpIndex r = ctx.index();
          if (single) {
            if (r == 0) {
              for (auto w : in) ctx.send(static_cast<VpIndex>(n / 2), Payload{w, 0, 0, 0});
            }
          } else {
            ctx.send(static_cast<VpIndex>(r ^ (n / 2)), Payload{in[r], 0, 0, 0});
          }
        },
        [&](VpIndex r, std::vector<Message>& msgs) {
          for (const auto& msg : msgs) {
            if (single) {
              out[filled++] = msg.payload[0];
            } else {
              out[r] = msg.payload[0];
            }
          }
        });
    pl.finish();
    return out;
  };
  spec.input_layout = single ? "all words at VP 0" : "word r at VP r";
  spec.output_layout = single ? "all words at VP n/2" : "word r at VP r xor n/2";
  return spec;
}

}  // namespace

AlgorithmSpec<std::vector<std::uint64_t>, std::vector<std::uint64_t>> single_sender_spec() {
  return zero_superstep_spec("single_sender", true);
}

AlgorithmSpec<std::vector<std::uint64_t>, std::vector<std::uint64_t>> balanced_matching_spec() {
  return zero_superstep_spec("balanced_matching", false);
}

}  // namespace netobliv
