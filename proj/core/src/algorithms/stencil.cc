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

#include "netobliv/algorithms/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>

namespace netobliv {

namespace {

using Idx = std::array<std::int64_t, 4>;

struct Eval {
  VpIndex vp;
  std::uint64_t node;
};

struct Send {
  VpIndex src;
  VpIndex dst;
  std::uint64_t node;
};

struct PlanStep {
  Label label = 0;
  std::vector<Eval> evals;
  std::vector<Send> sends;
  std::uint64_t degree = 0;
};

struct Plan {
  std::vector<PlanStep> steps;
  std::vector<Eval> trailing;
};

void append(Plan& a, Plan&& b) {
  if (!b.steps.empty()) {
    auto& first = b.steps.front().evals;
    first.insert(first.begin(), a.trailing.begin(), a.trailing.end());
    a.trailing.clear();
    for (auto& s : b.steps) a.steps.push_back(std::move(s));
  }
  a.trailing.insert(a.trailing.end(), b.trailing.begin(), b.trailing.end());
}

Plan zip(std::vector<Plan>&& parts) {
  Plan out;
  if (parts.empty()) return out;
  out.steps.resize(parts.front().steps.size());
  for (std::size_t i = 0; i < out.steps.size(); ++i) out.steps[i].label = parts.front().steps[i].label;
  for (auto& p : parts) {
    if (p.steps.size() != out.steps.size()) throw ModelError("stencil sub-plans differ in shape");
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
      auto& dst = out.steps[i];
      if (p.steps[i].label != dst.label) throw ModelError("stencil sub-plans differ in labels");
      dst.evals.insert(dst.evals.end(), p.steps[i].evals.begin(), p.steps[i].evals.end());
      dst.sends.insert(dst.sends.end(), p.steps[i].sends.begin(), p.steps[i].sends.end());
    }
    out.trailing.insert(out.trailing.end(), p.trailing.begin(), p.trailing.end());
  }
  return out;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Tile in rotated coordinates: off[2j] bounds u_j = x_j + t, off[2j+1] bounds
// w_j = t - x_j + n - 1, each over [off, off + side).
struct Box {
  Idx off{};
  std::int64_t side = 0;
};

class Planner {
 public:
  Planner(unsigned d, std::uint64_t n)
      : d_(d),
        n_(static_cast<std::int64_t>(n)),
        bits_(d * ilog2(n)),
        k_(static_cast<std::int64_t>(stencil_recursion_degree(n))),
        holders_(d == 1 ? n * n : n * n * n) {
    for (std::int64_t x = 0; x < n_; ++x) {
      if (d_ == 1) {
        holders_[id({x, 0, 0})].push_back(static_cast<VpIndex>(x));
      } else {
        for (std::int64_t y = 0; y < n_; ++y) {
          holders_[id({x, y, 0})].push_back(static_cast<VpIndex>(x * n_ + y));
        }
      }
    }
  }

  std::vector<Box> tiles() const {
    std::vector<std::pair<std::int64_t, Box>> found;
    const unsigned dims = 2 * d_;
    std::int64_t combos = 1;
    for (unsigned j = 0; j < dims; ++j) combos *= 3;
    for (std::int64_t c = 0; c < combos; ++c) {
      Box b;
      b.side = n_;
      std::int64_t rest = c, sum = 0;
      for (unsigned j = 0; j < dims; ++j) {
        const std::int64_t a = rest % 3 - 1;
        rest /= 3;
        b.off[dims - 1 - j] = n_ / 2 - 1 + a * n_;
        sum += a;
      }
      bool any = false;
      for_each_node(b, [&](const Coord&) { any = true; });
      if (any) found.emplace_back(sum, b);
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Box> out;
    for (auto& f : found) out.push_back(f.second);
    return out;
  }

  Plan build() {
    Plan plan;
    const auto v = static_cast<VpIndex>(std::uint64_t{1} << bits_);
    for (const auto& tile : tiles()) {
      PlanStep tr;
      tr.label = 0;
      transfer(tr, tile, 0, 0, v);
      commit();
      append(plan, Plan{{std::move(tr)}, {}});
      append(plan, plan_box(tile, 0));
    }
    const std::uint64_t expected = static_cast<std::uint64_t>(n_ - 1) *
                                   (d_ == 1 ? static_cast<std::uint64_t>(n_) : static_cast<std::uint64_t>(n_ * n_));
    if (evaluated_ != expected) throw ModelError("stencil plan does not cover every node once");
    for (auto& st : plan.steps) finalize(st);
    std::stable_sort(plan.trailing.begin(), plan.trailing.end(), [](const Eval& a, const Eval& b) { return a.vp < b.vp; });
    return plan;
  }

 private:
  std::uint64_t id(const Coord& c) const { return stencil_node_index(c, d_, static_cast<std::uint64_t>(n_)); }

  Label label_of(std::int64_t side) const { return bits_ - d_ * ilog2(static_cast<std::uint64_t>(side)); }

  std::uint64_t volume(std::int64_t side) const {
    return d_ == 1 ? static_cast<std::uint64_t>(side) : static_cast<std::uint64_t>(side * side);
  }

  bool in_box(const Box& b, const Coord& c) const {
    const std::int64_t t = c[d_];
    if (t < 1) return false;
    for (unsigned j = 0; j < d_; ++j) {
      const std::int64_t u = c[j] + t, w = t - c[j] + n_ - 1;
      if (u < b.off[2 * j] || u >= b.off[2 * j] + b.side) return false;
      if (w < b.off[2 * j + 1] || w >= b.off[2 * j + 1] + b.side) return false;
    }
    return true;
  }

  // Grid nodes with 1 <= t < n inside the box, by increasing t.
  template <class F>
  void for_each_node(const Box& b, F&& f, std::int64_t tmin = 1, std::int64_t tmax = -1) const {
    if (tmax < 0) tmax = n_ - 1;
    std::int64_t lo = std::max<std::int64_t>(1, tmin), hi = std::min(n_ - 1, tmax);
    for (unsigned j = 0; j < d_; ++j) {
      const std::int64_t e = b.off[2 * j] + b.off[2 * j + 1];
      lo = std::max(lo, ceil_div(e - n_ + 1, 2));
      hi = std::min(hi, floor_div(e + 2 * b.side - 2 - n_ + 1, 2));
    }
    for (std::int64_t t = lo; t <= hi; ++t) {
      std::array<std::int64_t, 2> xlo{}, xhi{};
      bool empty = false;
      for (unsigned j = 0; j < d_; ++j) {
        const std::int64_t U = b.off[2 * j], W = b.off[2 * j + 1];
        xlo[j] = std::max({U - t, t + n_ - W - b.side, std::int64_t{0}});
        xhi[j] = std::min({U + b.side - 1 - t, t + n_ - 1 - W, n_ - 1});
        if (xlo[j] > xhi[j]) empty = true;
      }
      if (empty) continue;
      if (d_ == 1) {
        for (std::int64_t x = xlo[0]; x <= xhi[0]; ++x) f(Coord{x, t, 0});
      } else {
        for (std::int64_t x = xlo[0]; x <= xhi[0]; ++x) {
          for (std::int64_t y = xlo[1]; y <= xhi[1]; ++y) f(Coord{x, y, t});
        }
      }
    }
  }

  template <class F>
  void for_each_neighbor(const Coord& c, std::int64_t dt, F&& f) const {
    const std::int64_t t = c[d_] + dt;
    if (t < 0 || t >= n_) return;
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      const std::int64_t x = c[0] + dx;
      if (x < 0 || x >= n_) continue;
      if (d_ == 1) {
        f(Coord{x, t, 0});
        continue;
      }
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const std::int64_t y = c[1] + dy;
        if (y < 0 || y >= n_) continue;
        f(Coord{x, y, t});
      }
    }
  }

  VpIndex owner(const Box& b, VpIndex base, const Coord& c) const {
    const std::int64_t t = c[d_];
    std::uint64_t r = 0;
    for (unsigned j = 0; j < d_; ++j) {
      const std::int64_t du = c[j] + t - b.off[2 * j], dw = t - c[j] + n_ - 1 - b.off[2 * j + 1];
      r = r * static_cast<std::uint64_t>(b.side) + static_cast<std::uint64_t>((du - dw + b.side - 1) / 2);
    }
    return static_cast<VpIndex>(base + r);
  }

  void mark(std::uint64_t node, VpIndex vp) {
    holders_[node].push_back(vp);
    ++evaluated_;
  }

  bool holds(std::uint64_t node, VpIndex vp) const {
    const auto& h = holders_[node];
    return std::find(h.begin(), h.end(), vp) != h.end();
  }

  // Ships the outside predecessors of `child` into its segment, reading from
  // holders inside [lo, hi).
  void transfer(PlanStep& st, const Box& child, VpIndex child_base, VpIndex lo, VpIndex hi) {
    const std::uint64_t vol = volume(child.side);
    std::vector<std::pair<std::uint64_t, VpIndex>> wanted;
    if (child.side >= k_) {
      std::vector<std::uint64_t> ext;
      for_each_node(child, [&](const Coord& c) {
        for_each_neighbor(c, -1, [&](const Coord& q) {
          if (!in_box(child, q)) ext.push_back(id(q));
        });
      });
      std::sort(ext.begin(), ext.end());
      ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
      std::uint64_t rr = 0;
      for (auto e : ext) wanted.emplace_back(e, static_cast<VpIndex>(child_base + (rr++ % vol)));
    } else {
      for_each_node(child, [&](const Coord& c) {
        const VpIndex consumer = child.side == 1 ? child_base : owner(child, child_base, c);
        for_each_neighbor(c, -1, [&](const Coord& q) {
          if (!in_box(child, q)) wanted.emplace_back(id(q), consumer);
        });
      });
      std::sort(wanted.begin(), wanted.end());
      wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    }
    for (const auto& [node, target] : wanted) {
      if (holds(node, target)) continue;
      const auto& h = holders_[node];
      VpIndex best = 0;
      std::uint64_t best_load = UINT64_MAX;
      for (auto vp : h) {
        if (vp < lo || vp >= hi) continue;
        const auto it = load_.find(vp);
        const std::uint64_t l = it == load_.end() ? 0 : it->second;
        if (l < best_load) {
          best = vp;
          best_load = l;
        }
      }
      if (best_load == UINT64_MAX) throw ModelError("stencil value not held inside the cluster");
      ++load_[best];
      st.sends.push_back({best, target, node});
      pending_.emplace_back(node, target);
    }
  }

  // Values shipped in a step become readable only after it completes.
  void commit() {
    for (const auto& [node, vp] : pending_) holders_[node].push_back(vp);
    pending_.clear();
  }

  const std::vector<std::vector<Idx>>& phases(std::int64_t side) {
    auto it = phase_cache_.find(side);
    if (it != phase_cache_.end()) return it->second;
    const std::int64_t s = side / k_;
    const unsigned dims = 2 * d_;
    std::int64_t combos = 1;
    for (unsigned j = 0; j < dims; ++j) combos *= k_;
    std::map<std::int64_t, std::vector<Idx>> stripes;
    const std::vector<std::int64_t> contexts =
        d_ == 1 ? std::vector<std::int64_t>{0} : std::vector<std::int64_t>{-side, 0, side};
    for (std::int64_t c = 0; c < combos; ++c) {
      Idx idx{};
      std::int64_t rest = c, sum = 0;
      for (unsigned j = 0; j < dims; ++j) {
        idx[dims - 1 - j] = rest % k_;
        rest /= k_;
      }
      for (unsigned j = 0; j < dims; ++j) sum += idx[j];
      bool possible = false;
      for (auto delta : contexts) {
        std::int64_t lo = INT64_MIN, hi = INT64_MAX;
        for (unsigned j = 0; j < d_; ++j) {
          const std::int64_t e = (j == 0 ? 0 : delta) + s * (idx[2 * j] + idx[2 * j + 1]);
          lo = std::max(lo, e);
          hi = std::min(hi, e + 2 * s - 2);
        }
        if (lo % 2 == 0) ++lo;
        if (lo <= hi) possible = true;
      }
      if (possible) stripes[sum].push_back(idx);
    }
    std::vector<std::vector<Idx>> out;
    const auto chunk = static_cast<std::size_t>(volume(k_));
    for (auto& [sum, kids] : stripes) {
      for (std::size_t i = 0; i < kids.size(); i += chunk) {
        out.emplace_back(kids.begin() + static_cast<std::ptrdiff_t>(i),
                         kids.begin() + static_cast<std::ptrdiff_t>(std::min(kids.size(), i + chunk)));
      }
    }
    return phase_cache_.emplace(side, std::move(out)).first->second;
  }

  Plan plan_box(const Box& b, VpIndex base) {
    Plan p;
    if (b.side == 1) {
      for_each_node(b, [&](const Coord& c) {
        p.trailing.push_back({base, id(c)});
        mark(id(c), base);
      });
      return p;
    }
    const Label label = label_of(b.side);
    if (b.side < k_) {
      const std::int64_t e = b.off[0] + b.off[1];
      for (std::int64_t row = 1; row <= 2 * b.side - 3; row += 2) {
        PlanStep st;
        st.label = label;
        const std::int64_t t = floor_div(row + e - n_ + 1, 2);
        for_each_node(
            b,
            [&](const Coord& c) {
              const VpIndex vp = owner(b, base, c);
              const std::uint64_t node = id(c);
              st.evals.push_back({vp, node});
              mark(node, vp);
              std::vector<VpIndex> dsts;
              for_each_neighbor(c, 1, [&](const Coord& q) {
                if (!in_box(b, q)) return;
                const VpIndex dst = owner(b, base, q);
                if (dst != vp && std::find(dsts.begin(), dsts.end(), dst) == dsts.end()) dsts.push_back(dst);
              });
              for (auto dst : dsts) {
                st.sends.push_back({vp, dst, node});
                holders_[node].push_back(dst);
              }
            },
            t, t);
        p.steps.push_back(std::move(st));
      }
      return p;
    }
    const std::int64_t s = b.side / k_;
    const std::uint64_t vol = volume(s);
    const VpIndex hi = static_cast<VpIndex>(base + volume(b.side));
    for (const auto& phase : phases(b.side)) {
      std::vector<Box> kids;
      for (const auto& idx : phase) {
        Box c;
        c.side = s;
        for (unsigned j = 0; j < 2 * d_; ++j) c.off[j] = b.off[j] + s * idx[j];
        kids.push_back(c);
      }
      PlanStep tr;
      tr.label = label;
      load_.clear();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        transfer(tr, kids[i], static_cast<VpIndex>(base + i * vol), base, hi);
      }
      commit();
      load_.clear();
      append(p, Plan{{std::move(tr)}, {}});
      std::vector<Plan> sub;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        sub.push_back(plan_box(kids[i], static_cast<VpIndex>(base + i * vol)));
      }
      append(p, zip(std::move(sub)));
    }
    return p;
  }

  static void finalize(PlanStep& st) {
    std::stable_sort(st.evals.begin(), st.evals.end(), [](const Eval& a, const Eval& b) { return a.vp < b.vp; });
    std::stable_sort(st.sends.begin(), st.sends.end(), [](const Send& a, const Send& b) { return a.src < b.src; });
    std::unordered_map<VpIndex, std::uint64_t> out, in;
    for (const auto& s : st.sends) {
      st.degree = std::max({st.degree, ++out[s.src], ++in[s.dst]});
    }
  }

  unsigned d_;
  std::int64_t n_;
  unsigned bits_;
  std::int64_t k_;
  std::vector<std::vector<VpIndex>> holders_;
  std::uint64_t evaluated_ = 0;
  std::unordered_map<VpIndex, std::uint64_t> load_;
  std::vector<std::pair<std::uint64_t, VpIndex>> pending_;
  std::map<std::int64_t, std::vector<std::vector<Idx>>> phase_cache_;
};

std::shared_ptr<const Plan> cached_plan(unsigned d, std::uint64_t n) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, std::uint64_t>, std::shared_ptr<const Plan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{d, n}];
  if (!slot) slot = std::make_shared<const Plan>(Planner(d, n).build());
  return slot;
}

Coord decode(std::uint64_t node, unsigned d, std::uint64_t n) {
  Coord c{0, 0, 0};
  for (int a = static_cast<int>(d) - 1; a >= 0; --a) {
    c[static_cast<unsigned>(a)] = static_cast<std::int64_t>(node % n);
    node /= n;
  }
  c[d] = static_cast<std::int64_t>(node);
  return c;
}

StencilOutput execute(Machine& m, const StencilInstance& in, const Plan& plan, AlgoOptions opts) {
  const unsigned d = in.d;
  const std::uint64_t n = in.n;
  const std::uint64_t nodes = d == 1 ? n * n : n * n * n;
  StencilOutput out(nodes, 0);
  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> store(m.size());
  for (std::uint64_t i = 0; i < in.inputs.size(); ++i) {
    const Coord c = d == 1 ? Coord{static_cast<std::int64_t>(i), 0, 0}
                           : Coord{static_cast<std::int64_t>(i / n), static_cast<std::int64_t>(i % n), 0};
    const auto node = stencil_node_index(c, d, n);
    store[i][node] = in.inputs[i];
    out[node] = in.inputs[i];
  }

  auto evaluate = [&](VpIndex r, std::uint64_t node) {
    const Coord c = decode(node, d, n);
    std::vector<std::uint64_t> preds;
    const std::int64_t t = c[d];
    const auto ext = static_cast<std::int64_t>(n);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = (d == 1 ? 0 : -1); dy <= (d == 1 ? 0 : 1); ++dy) {
        Coord q = c;
        q[0] += dx;
        if (d == 2) q[1] += dy;
        q[d] = t - 1;
        if (q[0] < 0 || q[0] >= ext || (d == 2 && (q[1] < 0 || q[1] >= ext))) continue;
        const auto it = store[r].find(stencil_node_index(q, d, n));
        if (it == store[r].end()) throw ModelError("stencil predecessor is not local");
        preds.push_back(it->second);
      }
    }
    const std::uint64_t value = stencil_node_value(in.fn, c, d, preds);
    store[r][node] = value;
    out[node] = value;
  };

  for (const auto& st : plan.steps) {
    std::size_t ei = 0, si = 0;
    m.superstep(st.label, [&](VpContext& ctx) {
      const VpIndex r = ctx.index();
      for (const auto& msg : ctx.receive()) store[r][msg.payload[0]] = msg.payload[1];
      for (; ei < st.evals.size() && st.evals[ei].vp == r; ++ei) evaluate(r, st.evals[ei].node);
      for (; si < st.sends.size() && st.sends[si].src == r; ++si) {
        const auto node = st.sends[si].node;
        ctx.send(st.sends[si].dst, Payload{node, store[r].at(node), 0, 0});
      }
      if (opts.dummies) send_dummies(ctx, st.label, st.degree);
    });
  }
  std::size_t ti = 0;
  m.finalize([&](VpContext& ctx) {
    const VpIndex r = ctx.index();
    for (const auto& msg : ctx.receive()) store[r][msg.payload[0]] = msg.payload[1];
    for (; ti < plan.trailing.size() && plan.trailing[ti].vp == r; ++ti) evaluate(r, plan.trailing[ti].node);
  });
  return out;
}

}  // namespace

std::uint64_t stencil_recursion_degree(std::uint64_t n) {
  require_pow2(n, "stencil side");
  const unsigned lg = ilog2(n);
  unsigned e = 0;
  while (e * e < lg) ++e;
  return std::uint64_t{1} << e;
}

std::size_t stencil_stage_count(unsigned d, std::uint64_t n) {
  if (d != 1 && d != 2) throw PreconditionError("stencil dimension must be 1 or 2");
  require_pow2(n, "stencil side");
  return Planner(d, n).tiles().size();
}

AlgorithmSpec<StencilInstance, StencilOutput> stencil_spec(unsigned d, AlgoOptions opts) {
  if (d != 1 && d != 2) throw PreconditionError("stencil dimension must be 1 or 2");
  AlgorithmSpec<StencilInstance, StencilOutput> spec;
  spec.problem = d == 1 ? "stencil_1d" : "stencil_2d";
  spec.input_size = [](const StencilInstance& in) { return in.n; };
  spec.vp_count = [d](std::uint64_t n) {
    require_pow2(n, "stencil side");
    return d == 1 ? n : n * n;
  };
  spec.program = [d, opts](Machine& m, const StencilInstance& in) {
    if (in.d != d) throw PreconditionError("stencil instance has the wrong dimension");
    const auto plan = cached_plan(d, in.n);
    return execute(m, in, *plan, opts);
  };
  spec.input_layout = d == 1 ? "input x at VP x" : "input (x, y) at VP x*n + y";
  spec.output_layout = "node value at the VP that evaluated it";
  return spec;
}

}  // namespace netobliv
