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

#include "netobliv/oracles.hpp"

#include <algorithm>
#include <numbers>

namespace netobliv {

std::uint64_t checksum(const std::vector<std::uint64_t>& words) {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto w : words) {
    for (int b = 0; b < 8; ++b) {
      h ^= (w >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::vector<std::int64_t> oracle_matmul(const std::vector<std::int64_t>& A,
                                        const std::vector<std::int64_t>& B, std::uint64_t side,
                                        Semiring s) {
  if (A.size() != side * side || B.size() != side * side) {
    throw PreconditionError("matrix shape mismatch");
  }
  std::vector<std::int64_t> C(side * side, sr_zero(s));
  for (std::uint64_t i = 0; i < side; ++i) {
    for (std::uint64_t j = 0; j < side; ++j) {
      std::int64_t acc = sr_zero(s);
      for (std::uint64_t k = 0; k < side; ++k) {
        acc = sr_add(s, acc, sr_mul(s, A[i * side + k], B[k * side + j]));
      }
      C[i * side + j] = acc;
    }
  }
  return C;
}

std::vector<std::complex<double>> oracle_dft(const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> X(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) /
                         static_cast<double>(n);
      acc += x[j] * std::polar(1.0, ang);
    }
    X[k] = acc;
  }
  return X;
}

std::vector<std::uint64_t> oracle_ntt(const std::vector<std::uint64_t>& x) {
  const std::size_t n = x.size();
  const std::uint64_t w = ntt_root(n);
  std::vector<std::uint64_t> X(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      acc = (acc + x[j] % kNttModulus * mod_pow(w, (j * k) % n)) % kNttModulus;
    }
    X[k] = acc;
  }
  return X;
}

std::vector<std::uint64_t> oracle_sort(const std::vector<std::uint64_t>& keys) {
  std::vector<std::size_t> idx(keys.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return keys[a] < keys[b];
  });
  std::vector<std::uint64_t> rank(keys.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (r > 0 && keys[idx[r]] == keys[idx[r - 1]]) throw PreconditionError("duplicate keys");
    rank[idx[r]] = r;
  }
  return rank;
}

namespace {

template <class F>
void for_each_node_by_time(const StencilDag& dag, F&& f) {
  const auto e = dag.extent;
  for (std::int64_t t = 0; t < e; ++t) {
    if (dag.d == 1) {
      for (std::int64_t x = 0; x < e; ++x) f(Coord{x, t, 0});
    } else {
      for (std::int64_t x = 0; x < e; ++x) {
        for (std::int64_t y = 0; y < e; ++y) f(Coord{x, y, t});
      }
    }
  }
}

}  // namespace

std::vector<std::uint64_t> oracle_stencil(const StencilDag& dag) {
  const auto e = static_cast<std::uint64_t>(dag.extent);
  const unsigned d = dag.d;
  std::vector<std::uint64_t> val(d == 1 ? e * e : e * e * e, 0);
  std::vector<char> have(val.size(), 0);
  for_each_node_by_time(dag, [&](const Coord& c) {
    if (!dag.member(c)) return;
    std::vector<std::uint64_t> preds;
    const std::int64_t t = c[d];
    if (t > 0) {
      if (d == 1) {
        for (int dx = -1; dx <= 1; ++dx) {
          const Coord q{c[0] + dx, t - 1, 0};
          if (q[0] < 0 || q[0] >= dag.extent) continue;
          const auto qi = stencil_node_index(q, d, e);
          if (have[qi]) preds.push_back(val[qi]);
        }
      } else {
        for (int dx = -1; dx <= 1; ++dx) {
          for (int dy = -1; dy <= 1; ++dy) {
            const Coord q{c[0] + dx, c[1] + dy, t - 1};
            if (q[0] < 0 || q[0] >= dag.extent || q[1] < 0 || q[1] >= dag.extent) continue;
            const auto qi = stencil_node_index(q, d, e);
            if (have[qi]) preds.push_back(val[qi]);
          }
        }
      }
    }
    const auto i = stencil_node_index(c, d, e);
    val[i] = preds.empty() ? dag.input(c) : stencil_node_value(dag.fn, c, d, preds);
    have[i] = 1;
  });
  return val;
}

std::uint64_t stencil_member_count(const StencilDag& dag) {
  std::uint64_t count = 0;
  for_each_node_by_time(dag, [&](const Coord& c) { count += dag.member(c) ? 1 : 0; });
  return count;
}

std::vector<std::int64_t> oracle_prefix(const std::vector<std::int64_t>& values) {
  std::vector<std::int64_t> out(values.size());
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = acc += values[i];
  return out;
}

OracleResult oracle_result(const std::string& problem, std::uint64_t n,
                           std::vector<std::uint64_t> payload) {
  OracleResult r;
  r.problem = problem;
  r.n = n;
  r.checksum = checksum(payload);
  r.payload = std::move(payload);
  return r;
}

}  // namespace netobliv
