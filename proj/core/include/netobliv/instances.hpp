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

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "netobliv/common.hpp"

namespace netobliv {

using Rng = std::mt19937_64;

// Reads NETOBLIV_SEED, falling back to `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback = 20140623);

// ---- matrices -------------------------------------------------------------

enum class Semiring { PlusTimes, MinPlus };

std::int64_t sr_zero(Semiring s);
std::int64_t sr_add(Semiring s, std::int64_t a, std::int64_t b);
std::int64_t sr_mul(Semiring s, std::int64_t a, std::int64_t b);

struct MatrixInstance {
  std::uint64_t side = 0;
  Semiring semiring = Semiring::PlusTimes;
  std::vector<std::int64_t> A;  // row-major
  std::vector<std::int64_t> B;

  std::uint64_t n() const { return side * side; }
};

MatrixInstance random_matrix_instance(std::uint64_t n, Semiring s, Rng& rng);
MatrixInstance identity_matrix_instance(std::uint64_t n, Semiring s);

// ---- FFT ------------------------------------------------------------------

enum class FftMode { Complex, Modular };

inline constexpr std::uint64_t kNttModulus = 998244353;
inline constexpr std::uint64_t kNttRoot = 3;

struct FftInstance {
  FftMode mode = FftMode::Complex;
  std::vector<std::complex<double>> x;
  std::vector<std::uint64_t> xm;  // residues mod kNttModulus

  std::uint64_t n() const { return mode == FftMode::Complex ? x.size() : xm.size(); }
};

struct FftOutput {
  std::vector<std::complex<double>> X;
  std::vector<std::uint64_t> Xm;
};

FftInstance random_fft_instance(std::uint64_t n, FftMode mode, Rng& rng);

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m = kNttModulus);
// Primitive n-th root of unity modulo kNttModulus, n a power of two.
std::uint64_t ntt_root(std::uint64_t n);

// Successors of FFT node <w,l>: <w,l+1> and <w xor 2^l, l+1>.
std::vector<std::pair<std::uint64_t, unsigned>> fft_successors(std::uint64_t w, unsigned l,
                                                               std::uint64_t n);

// ---- sorting --------------------------------------------------------------

struct SortInstance {
  std::vector<std::uint64_t> keys;
  std::uint64_t n() const { return keys.size(); }
};

SortInstance random_sort_instance(std::uint64_t n, Rng& rng);

// ---- stencils -------------------------------------------------------------

enum class NodeFunction { Sum, HashMix };

using Coord = std::array<std::int64_t, 3>;  // (i_0, .., i_d), unused tail entries zero

struct StencilInstance {
  unsigned d = 1;
  std::uint64_t n = 0;
  NodeFunction fn = NodeFunction::Sum;
  std::vector<std::uint64_t> inputs;  // i_d = 0 layer, row-major over the d spatial coords
};

StencilInstance random_stencil_instance(unsigned d, std::uint64_t n, NodeFunction fn, Rng& rng);

// Value of a node from its predecessor values listed in canonical delta order.
std::uint64_t stencil_node_value(NodeFunction fn, const Coord& c, unsigned d,
                                 const std::vector<std::uint64_t>& preds);

// Generic stencil DAG over the lattice [0, extent)^(d+1) restricted by `member`.
// Members without member predecessors take their value from `input`.
struct StencilDag {
  unsigned d = 1;
  std::int64_t extent = 0;
  std::function<bool(const Coord&)> member;
  NodeFunction fn = NodeFunction::Sum;
  std::function<std::uint64_t(const Coord&)> input;
};

StencilDag full_stencil_dag(const StencilInstance& inst);

bool in_diamond(const Coord& c, std::int64_t side);
bool in_octahedron(const Coord& c, std::int64_t side);
bool in_tetrahedron(const Coord& c, std::int64_t side);

StencilDag diamond_dag(std::int64_t side, NodeFunction fn);
StencilDag octahedron_dag(std::int64_t side, NodeFunction fn);
StencilDag tetrahedron_dag(std::int64_t side, NodeFunction fn);

// Linear index of a node of the full (n,d)-stencil, time coordinate last.
std::uint64_t stencil_node_index(const Coord& c, unsigned d, std::uint64_t n);

// ---- broadcast ------------------------------------------------------------

struct BroadcastInstance {
  std::vector<std::uint64_t> V;
  std::uint64_t n() const { return V.size(); }
};

BroadcastInstance random_broadcast_instance(std::uint64_t n, Rng& rng);

}  // namespace netobliv
