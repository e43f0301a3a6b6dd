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

#include "netobliv/algorithms/broadcast.hpp"

#include <algorithm>

#include "netobliv/folding.hpp"
#include "netobliv/metrics.hpp"

namespace netobliv {

namespace {

BroadcastOutput fill_blocks(const BroadcastInstance& in, std::uint64_t procs,
                            const std::vector<bool>& knows, const std::vector<std::uint64_t>& value) {
  BroadcastOutput out(in.V);
  const std::uint64_t block = in.n() / procs;
  for (std::uint64_t q = 0; q < procs; ++q) {
    if (!knows[q]) throw ModelError("broadcast left a processor uninformed");
    for (std::uint64_t k = 0; k < block; ++k) out[q * block + k] = value[q];
  }
  return out;
}

}  // namespace

std::uint64_t broadcast_fanout(const Rational& sigma) {
  std::uint64_t k = 2;
  while (Rational(static_cast<std::int64_t>(k)) < sigma) k *= 2;
  return k;
}

RunResult<BroadcastOutput> broadcast_aware(const BroadcastInstance& in, std::uint64_t p,
                                           const Rational& sigma, Router* router) {
  require_pow2(in.n(), "broadcast size");
  require_pow2(p, "processor count");
  if (p > in.n()) throw PreconditionError("broadcast needs p <= n");
  const std::uint64_t kappa = broadcast_fanout(sigma);
  const unsigned logp = ilog2(p), logk = ilog2(kappa);
  Machine m(p, in.n(), router);
  Pipeline pl(m);
  std::vector<bool> knows(p, false);
  std::vector<std::uint64_t> value(p, 0);
  knows[0] = true;
  value[0] = in.V.empty() ? 0 : in.V[0];

  const unsigned steps = logp == 0 ? 0 : (logp + logk - 1) / logk;
  for (unsigned i = 0; i < steps; ++i) {
    const unsigned shift = i * logk;
    const std::uint64_t stride = p >> shift;
    const std::uint64_t child = stride > kappa ? stride / kappa : 1;
    pl.step(
        shift,
        [&, stride, child](VpContext& ctx) {
          const VpIndex r = ctx.index();
          if (r % stride != 0) return;
          for (std::uint64_t d = 0; d < stride; d += child) {
            ctx.send(static_cast<VpIndex>(r + d), Payload{value[r], 0, 0, 0});
          }
        },
        [&](VpIndex r, std::vector<Message>& msgs) {
          for (const auto& msg : msgs) {
            knows[r] = true;
            value[r] = msg.payload[0];
          }
        });
  }
  pl.finish();
  auto out = fill_blocks(in, p, knows, value);
  return {std::move(out), m.take_trace()};
}

AlgorithmSpec<BroadcastInstance, BroadcastOutput> broadcast_oblivious_spec() {
  AlgorithmSpec<BroadcastInstance, BroadcastOutput> spec;
  spec.problem = "broadcast";
  spec.input_size = [](const BroadcastInstance& in) { return in.n(); };
  spec.vp_count = [](std::uint64_t n) {
    require_pow2(n, "broadcast size");
    return n;
  };
  spec.program = [](Machine& m, const BroadcastInstance& in) {
    const std::uint64_t n = m.size();
    const unsigned bits = m.bits();
    Pipeline pl(m);
    std::vector<bool> knows(n, false);
    std::vector<std::uint64_t> value(n, 0);
    knows[0] = true;
    value[0] = in.V[0];
    for (unsigned i = 0; i < bits; ++i) {
      const std::uint64_t stride = n >> i;
      pl.step(
          i,
          [&, stride](VpContext& ctx) {
            const VpIndex r = ctx.index();
            if (r % stride == 0) ctx.send(static_cast<VpIndex>(r + stride / 2), Payload{value[r], 0, 0, 0});
          },
          [&](VpIndex r, std::vector<Message>& msgs) {
            for (const auto& msg : msgs) {
              knows[r] = true;
              value[r] = msg.payload[0];
            }
          });
    }
    pl.finish();
    return fill_blocks(in, n, knows, value);
  };
  spec.input_layout = "V[i] at VP i";
  spec.output_layout = "V[i] at VP i";
  return spec;
}

RunResult<BroadcastOutput> broadcast_oblivious(const BroadcastInstance& in) {
  return run(broadcast_oblivious_spec(), in);
}

Rational gap_ratio(const Trace& oblivious, std::uint64_t p, const Rational& sigma1,
                   const Rational& sigma2, const std::vector<Rational>& grid) {
  if (sigma2 < sigma1) throw PreconditionError("gap_ratio needs sigma1 <= sigma2");
  const DegreeProfile obl = degree_profile(oblivious, p);
  BroadcastInstance probe{std::vector<std::uint64_t>(oblivious.n, 0)};
  if (!probe.V.empty()) probe.V[0] = 1;
  bool any = false;
  Rational best{0};
  for (const auto& sigma : grid) {
    if (sigma < sigma1 || sigma2 < sigma) continue;
    const auto aware = broadcast_aware(probe, p, sigma);
    const Rational h_aware = comm_complexity(degree_profile(aware.trace, p), {p, sigma});
    if (h_aware == Rational(0)) throw MetricUndefined("aware broadcast has zero cost");
    const Rational ratio = comm_complexity(obl, {p, sigma}) / h_aware;
    if (!any || best < ratio) best = ratio;
    any = true;
  }
  if (!any) throw PreconditionError("gap_ratio grid has no point in [sigma1, sigma2]");
  return best;
}

}  // namespace netobliv
