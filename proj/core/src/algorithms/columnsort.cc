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

#include "netobliv/algorithms/columnsort.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace netobliv {

namespace {

struct Item {
  std::uint64_t key = 0;
  std::uint64_t origin = 0;
  std::uint64_t mask = ~std::uint64_t{0};

  bool operator<(const Item& o) const {
    if (mask != o.mask) return mask < o.mask;
    return key < o.key;
  }
};

Payload pack(const Item& it) { return {it.key, it.origin, it.mask, 0}; }
Item unpack(const Message& m) { return {m.payload[0], m.payload[1], m.payload[2]}; }

class Columnsort {
 public:
  Columnsort(Machine& m, const SortInstance& in, AlgoOptions opts)
      : pl_(m), opts_(opts), n_(in.keys.size()), bits_(m.bits()), items_(n_) {
    for (std::uint64_t i = 0; i < n_; ++i) items_[i] = {in.keys[i], i, ~std::uint64_t{0}};
  }

  SortOutput run() {
    sort(n_, 0);
    pl_.finish();
    SortOutput rank(n_);
    for (std::uint64_t q = 0; q < n_; ++q) rank[items_[q].origin] = q;
    return rank;
  }

 private:
  Label label_of(std::uint64_t m) const { return bits_ - ilog2(m); }

  void dummies(VpContext& ctx, Label label, std::uint64_t count) {
    if (opts_.dummies) send_dummies(ctx, label, count);
  }

  // One item per VP moves to f(segment offset) inside its segment of m VPs.
  template <class F>
  void permute(std::uint64_t m, F f) {
    const Label label = label_of(m);
    pl_.step(
        label,
        [=, this](VpContext& ctx) {
          const VpIndex r = ctx.index();
          const std::uint64_t base = r & ~(m - 1);
          Item it = items_[r];
          const std::uint64_t dst = f(r - base, it);
          ctx.send(static_cast<VpIndex>(base + dst), pack(it));
          dummies(ctx, label, 1);
        },
        [this](VpIndex r, std::vector<Message>& msgs) {
          for (const auto& msg : msgs) items_[r] = unpack(msg);
        });
  }

  // Sorts every segment of m VPs; `depth` selects the tag bit used by the shift.
  void sort(std::uint64_t m, unsigned depth) {
    if (m <= 1) return;
    if (m <= kSortBaseSegment) {
      base(m);
      return;
    }
    const auto [r, s] = column_shape(m);
    const std::uint64_t half = r / 2;
    const std::uint64_t bit = std::uint64_t{1} << depth;

    sort(r, depth + 1);
    permute(m, [=](std::uint64_t q, Item&) { return (q % s) * r + q / s; });
    sort(r, depth + 1);
    permute(m, [=](std::uint64_t q, Item&) { return (q % r) * s + q / r; });
    sort(r, depth + 1);
    permute(m, [=](std::uint64_t q, Item& it) {
      if (q + half >= m) it.mask &= ~bit;
      return (q + half) % m;
    });
    sort(r, depth + 1);
    permute(m, [=](std::uint64_t q, Item& it) {
      it.mask |= bit;
      return (q + m - half) % m;
    });
  }

  void base(std::uint64_t m) {
    const Label label = label_of(m);
    const std::uint64_t fan = m - 1;
    pl_.step(
        label,
        [=, this](VpContext& ctx) {
          const VpIndex r = ctx.index();
          if (r % m != 0) ctx.send(static_cast<VpIndex>(r & ~(m - 1)), pack(items_[r]));
          dummies(ctx, label, fan);
        },
        [this, m](VpIndex r, std::vector<Message>& msgs) {
          if (r % m != 0) return;
          std::vector<Item> seg{items_[r]};
          for (const auto& msg : msgs) seg.push_back(unpack(msg));
          std::sort(seg.begin(), seg.end());
          gathered_[r] = std::move(seg);
        });
    pl_.step(
        label,
        [=, this](VpContext& ctx) {
          const VpIndex r = ctx.index();
          if (r % m == 0) {
            auto seg = std::move(gathered_[r]);
            gathered_.erase(r);
            items_[r] = seg[0];
            for (std::uint64_t q = 1; q < m; ++q) ctx.send(static_cast<VpIndex>(r + q), pack(seg[q]));
          }
          dummies(ctx, label, fan);
        },
        [this](VpIndex r, std::vector<Message>& msgs) {
          for (const auto& msg : msgs) items_[r] = unpack(msg);
        });
  }

  Pipeline pl_;
  AlgoOptions opts_;
  std::uint64_t n_;
  unsigned bits_;
  std::vector<Item> items_;
  std::map<VpIndex, std::vector<Item>> gathered_;
};

}  // namespace

ColumnShape column_shape(std::uint64_t m) {
  require_pow2(m, "segment size");
  const unsigned b = ilog2(m);
  unsigned a = (2 * b + 2) / 3;
  while (a < b) {
    const std::uint64_t r = std::uint64_t{1} << a, s = m / r;
    if (r >= 2 * (s - 1) * (s - 1)) break;
    ++a;
  }
  return {std::uint64_t{1} << a, m >> a};
}

AlgorithmSpec<SortInstance, SortOutput> columnsort_spec(AlgoOptions opts) {
  AlgorithmSpec<SortInstance, SortOutput> spec;
  spec.problem = "columnsort";
  spec.input_size = [](const SortInstance& in) { return static_cast<std::uint64_t>(in.keys.size()); };
  spec.vp_count = [](std::uint64_t n) { return n; };
  spec.program = [opts](Machine& m, const SortInstance& in) {
    require_pow2(in.keys.size(), "sort input size");
    if (in.keys.size() != m.size()) throw PreconditionError("columnsort needs one key per VP");
    if (std::set<std::uint64_t>(in.keys.begin(), in.keys.end()).size() != in.keys.size()) {
      throw PreconditionError("columnsort keys must be distinct");
    }
    return Columnsort(m, in, opts).run();
  };
  spec.input_layout = "key i at VP i";
  spec.output_layout = "rank of key i, read from the VP holding it";
  return spec;
}

}  // namespace netobliv
