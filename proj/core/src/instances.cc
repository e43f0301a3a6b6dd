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

#include "netobliv/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace netobliv {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t coord_hash(const Coord& c) {
  std::uint64_t h = 0x5eed;
  for (auto v : c) h = splitmix64(h ^ static_cast<std::uint64_t>(v));
  return h;
}

}  // namespace

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("NETOBLIV_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0') return v;
  }
  return fallback;
}

std::int64_t sr_zero(Semiring s) {
  return s == Semiring::PlusTimes ? 0 : std::numeric_limits<std::int64_t>::max() / 4;
}

std::int64_t sr_add(Semiring s, std::int64_t a, std::int64_t b) {
  return s == Semiring::PlusTimes ? a + b : std::min(a, b);
}

std::int64_t sr_mul(Semiring s, std::int64_t a, std::int64_t b) {
  if (s == Semiring::PlusTimes) return a * b;
  const std::int64_t inf = sr_zero(s);
  if (a >= inf || b >= inf) return inf;
  return a + b;
}

MatrixInstance random_matrix_instance(std::uint64_t n, Semiring s, Rng& rng) {
  MatrixInstance m;
  m.side = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (m.side * m.side != n) throw PreconditionError("matrix size must be a perfect square");
  m.semiring = s;
  std::uniform_int_distribution<std::int64_t> dist(s == Semiring::PlusTimes ? -9 : 0, 99);
  m.A.resize(n);
  m.B.resize(n);
  for (auto& a : m.A) a = dist(rng);
  for (auto& b : m.B) b = dist(rng);
  return m;
}

MatrixInstance identity_matrix_instance(std::uint64_t n, Semiring s) {
  MatrixInstance m;
  m.side = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (m.side * m.side != n) throw PreconditionError("matrix size must be a perfect square");
  m.semiring = s;
  const std::int64_t one = s == Semiring::PlusTimes ? 1 : 0;
  m.A.assign(n, sr_zero(s));
  for (std::uint64_t i = 0; i < m.side; ++i) m.A[i * m.side + i] = one;
  m.B = m.A;
  return m;
}

FftInstance random_fft_instance(std::uint64_t n, FftMode mode, Rng& rng) {
  FftInstance f;
  f.mode = mode;
  if (mode == FftMode::Complex) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    f.x.resize(n);
    for (auto& z : f.x) z = {d(rng), d(rng)};
  } else {
    std::uniform_int_distribution<std::uint64_t> d(0, kNttModulus - 1);
    f.xm.resize(n);
    for (auto& z : f.xm) z = d(rng);
  }
  return f;
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::uint64_t ntt_root(std::uint64_t n) {
  require_pow2(n, "NTT length");
  if ((kNttModulus - 1) % n != 0) throw PreconditionError("NTT length too large");
  return mod_pow(kNttRoot, (kNttModulus - 1) / n);
}

std::vector<std::pair<std::uint64_t, unsigned>> fft_successors(std::uint64_t w, unsigned l,
                                                               std::uint64_t n) {
  if (w >= n || l >= ilog2(n)) return {};
  return {{w, l + 1}, {w ^ (std::uint64_t{1} << l), l + 1}};
}

SortInstance random_sort_instance(std::uint64_t n, Rng& rng) {
  SortInstance s;
  std::unordered_set<std::uint64_t> seen;
  std::uniform_int_distribution<std::uint64_t> d(0, (std::uint64_t{1} << 48) - 1);
  while (s.keys.size() < n) {
    const auto k = d(rng);
    if (seen.insert(k).second) s.keys.push_back(k);
  }
  return s;
}

StencilInstance random_stencil_instance(unsigned d, std::uint64_t n, NodeFunction fn, Rng& rng) {
  if (d != 1 && d != 2) throw PreconditionError("stencil dimension must be 1 or 2");
  require_pow2(n, "stencil side");
  StencilInstance s;
  s.d = d;
  s.n = n;
  s.fn = fn;
  s.inputs.resize(d == 1 ? n : n * n);
  std::uniform_int_distribution<std::uint64_t> dist(0, 1000);
  for (auto& x : s.inputs) x = dist(rng);
  return s;
}

std::uint64_t stencil_node_value(NodeFunction fn, const Coord& c, unsigned d,
                                 const std::vector<std::uint64_t>& preds) {
  if (fn == NodeFunction::Sum) {
    return std::accumulate(preds.begin(), preds.end(), std::uint64_t{0});
  }
  std::uint64_t h = splitmix64(coord_hash(c) + d);
  for (auto v : preds) h = splitmix64(h ^ v);
  return h;
}

StencilDag full_stencil_dag(const StencilInstance& inst) {
  StencilDag g;
  g.d = inst.d;
  g.extent = static_cast<std::int64_t>(inst.n);
  const auto n = g.extent;
  const unsigned d = inst.d;
  g.member = [n, d](const Coord& c) {
    for (unsigned a = 0; a <= d; ++a) {
      if (c[a] < 0 || c[a] >= n) return false;
    }
    return true;
  };
  g.fn = inst.fn;
  const auto* in = &inst.inputs;
  g.input = [in, n, d](const Coord& c) {
    return d == 1 ? (*in)[c[0]] : (*in)[c[0] * n + c[1]];
  };
  return g;
}

namespace {

bool in_box(const Coord& c, unsigned d, std::int64_t extent) {
  for (unsigned a = 0; a <= d; ++a) {
    if (c[a] < 0 || c[a] >= extent) return false;
  }
  return true;
}

}  // namespace

bool in_diamond(const Coord& c, std::int64_t side) {
  const std::int64_t m = side - 1;
  const auto i0 = c[0], i1 = c[1];
  return in_box(c, 1, 2 * side - 1) && i0 + i1 >= m && i0 - i1 <= m && i0 - i1 >= -m &&
         i0 + i1 <= 3 * m;
}

bool in_octahedron(const Coord& c, std::int64_t side) {
  const std::int64_t m = side - 1;
  const auto i0 = c[0], i1 = c[1], i2 = c[2];
  return in_box(c, 2, 2 * side - 1) && i0 + i2 >= m && i0 - i2 <= m && i0 - i2 >= -m &&
         i0 + i2 <= 3 * m && i0 + i1 >= m && i0 - i1 <= m && i0 - i1 >= -m && i0 + i1 <= 3 * m;
}

bool in_tetrahedron(const Coord& c, std::int64_t side) {
  const std::int64_t m = side - 1;
  const auto i0 = c[0], i1 = c[1], i2 = c[2];
  return in_box(c, 2, 2 * side - 1) && i0 + i1 >= m && i0 - i1 >= m && i1 + i2 <= 2 * m &&
         i1 - i2 <= 0;
}

namespace {

StencilDag predicate_dag(unsigned d, std::int64_t side, NodeFunction fn,
                         bool (*pred)(const Coord&, std::int64_t)) {
  StencilDag g;
  g.d = d;
  g.extent = 2 * side - 1;
  g.member = [side, pred](const Coord& c) { return pred(c, side); };
  g.fn = fn;
  g.input = [](const Coord& c) { return coord_hash(c) % 1000; };
  return g;
}

}  // namespace

StencilDag diamond_dag(std::int64_t side, NodeFunction fn) {
  return predicate_dag(1, side, fn, in_diamond);
}

StencilDag octahedron_dag(std::int64_t side, NodeFunction fn) {
  return predicate_dag(2, side, fn, in_octahedron);
}

StencilDag tetrahedron_dag(std::int64_t side, NodeFunction fn) {
  return predicate_dag(2, side, fn, in_tetrahedron);
}

std::uint64_t stencil_node_index(const Coord& c, unsigned d, std::uint64_t n) {
  std::uint64_t idx = static_cast<std::uint64_t>(c[d]);
  for (unsigned a = 0; a < d; ++a) idx = idx * n + static_cast<std::uint64_t>(c[a]);
  return idx;
}

BroadcastInstance random_broadcast_instance(std::uint64_t n, Rng& rng) {
  BroadcastInstance b;
  b.V.resize(n);
  std::uniform_int_distribution<std::uint64_t> d(1, 1u << 30);
  for (auto& x : b.V) x = d(rng);
  return b;
}

}  // namespace netobliv
