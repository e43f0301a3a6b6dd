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

#include "netobliv/algorithms/matmul.hpp"

#include <cmath>

namespace netobliv {

namespace {

enum Which : std::uint64_t { kA = 0, kB = 1, kC = 2 };

Payload entry(Which w, std::uint64_t slot, std::int64_t value) {
  return {w, slot, static_cast<std::uint64_t>(value), 0};
}

std::int64_t value_of(const Message& m) { return static_cast<std::int64_t>(m.payload[2]); }


// ---- eight-segment recursion ------------------------------------------------

struct Frame {
  std::vector<std::int64_t> a, b, c;
  std::vector<std::int64_t> fa, fb;  // gathered operands at a base-case leader
};

class EightWay {
 public:
  EightWay(Machine& m, const MatrixInstance& in, AlgoOptions opts)
      : pl_(m), in_(in), opts_(opts), n_(in.n()), bits_(m.bits()) {}

  MatrixOutput run() {
    frames_.emplace_back(n_);
    for (std::uint64_t r = 0; r < n_; ++r) {
      frames_[0][r].a = {in_.A[r]};
      frames_[0][r].b = {in_.B[r]};
      frames_[0][r].c = {sr_zero(in_.semiring)};
    }
    level(0, n_, 1, in_.side);
    pl_.finish();
    MatrixOutput C(n_);
    for (std::uint64_t r = 0; r < n_; ++r) C[r] = frames_[0][r].c[0];
    return C;
  }

 private:
  Label label_for(std::uint64_t s) const { return bits_ - ilog2(s); }

  void dummies(VpContext& ctx, Label label, std::uint64_t count) {
    if (opts_.dummies) send_dummies(ctx, label, count);
  }

  void level(std::size_t i, std::uint64_t s, std::uint64_t e, std::uint64_t m) {
    const Semiring sr = in_.semiring;
    if (s == 1) {
      pl_.then([this, i, m, sr](VpIndex r) {
        auto& f = frames_[i][r];
        for (std::uint64_t x = 0; x < m; ++x) {
          for (std::uint64_t y = 0; y < m; ++y) {
            std::int64_t acc = sr_zero(sr);
            for (std::uint64_t z = 0; z < m; ++z) {
              acc = sr_add(sr, acc, sr_mul(sr, f.a[x * m + z], f.b[z * m + y]));
            }
            f.c[x * m + y] = acc;
          }
        }
      });
      return;
    }
    if (s < 8) {
      base_gather(i, s, e, m);
      return;
    }
    const Label label = label_for(s);
    const std::uint64_t sub = s / 8, e2 = 2 * e, hm = m / 2;
    frames_.resize(std::max(frames_.size(), i + 2));
    frames_[i + 1].assign(n_, Frame{});
    for (auto& f : frames_[i + 1]) {
      f.a.assign(e2, 0);
      f.b.assign(e2, 0);
      f.c.assign(e2, sr_zero(sr));
    }

    pl_.step(
        label,
        [=, this](VpContext& ctx) {
          const VpIndex r = ctx.index();
          const std::uint64_t base = r & ~(s - 1), q = r - base;
          const auto& f = frames_[i][r];
          for (std::uint64_t u = 0; u < e; ++u) {
            const std::uint64_t idx = q * e + u, row = idx / m, col = idx % m;
            const std::uint64_t qi = (row % hm) * hm + col % hm;
            const std::uint64_t hi = row / hm, lo = col / hm;
            for (std::uint64_t o = 0; o < 2; ++o) {
              // A[row][col] lies in A_{hi,lo}: needed by S_{hi,o,lo}.
              const std::uint64_t ta = 4 * hi + 2 * o + lo;
              ctx.send(static_cast<VpIndex>(base + ta * sub + qi / e2), entry(kA, qi % e2, f.a[u]));
              // B[row][col] lies in B_{hi,lo}: needed by S_{o,lo,hi}.
              const std::uint64_t tb = 4 * o + 2 * lo + hi;
              ctx.send(static_cast<VpIndex>(base + tb * sub + qi / e2), entry(kB, qi % e2, f.b[u]));
            }
          }
          dummies(ctx, label, e);
        },
        [this, i](VpIndex r, std::vector<Message>& msgs) {
          auto& f = frames_[i + 1][r];
          for (const auto& msg : msgs) (msg.payload[0] == kA ? f.a : f.b)[msg.payload[1]] = value_of(msg);
        });

    level(i + 1, sub, e2, hm);

    pl_.step(
        label,
        [=, this](VpContext& ctx) {
          const VpIndex r = ctx.index();
          const std::uint64_t base = r & ~(s - 1), q = r - base;
          const std::uint64_t t = q / sub, qs = q % sub;
          const std::uint64_t hi = t / 4, ko = (t / 2) % 2;
          const auto& f = frames_[i + 1][r];
          for (std::uint64_t u = 0; u < e2; ++u) {
            const std::uint64_t qi = qs * e2 + u;
            const std::uint64_t row = hi * hm + qi / hm, col = ko * hm + qi % hm;
            const std::uint64_t idx = row * m + col;
            ctx.send(static_cast<VpIndex>(base + idx / e), entry(kC, idx % e, f.c[u]));
          }
          dummies(ctx, label, e);
        },
        [this, i, sr](VpIndex r, std::vector<Message>& msgs) {
          auto& c = frames_[i][r].c;
          for (const auto& msg : msgs) c[msg.payload[1]] = sr_add(sr, c[msg.payload[1]], value_of(msg));
        });
  }

  // Segments of 2 or 4 VPs: gather at the leader, multiply, scatter back.
  void base_gather(std::size_t i, std::uint64_t s, std::uint64_t e, std::uint64_t m) {
    const Label label = label_for(s);
    const Semiring sr = in_.semiring;
    pl_.step(
        label,
        [=, this](VpContext& ctx) {
          const VpIndex r = ctx.index();
          const std::uint64_t base = r & ~(s - 1), q = r - base;
          auto& f = frames_[i][r];
          if (q == 0) {
            f.fa.assign(m * m, 0);
            f.fb.assign(m * m, 0);
            for (std::uint64_t u = 0; u < e; ++u) {
              f.fa[u] = f.a[u];
              f.fb[u] = f.b[u];
            }
          } else {
            for (std::uint64_t u = 0; u < e; ++u) {
              ctx.send(static_cast<VpIndex>(base), entry(kA, q * e + u, f.a[u]));
              ctx.send(static_cast<VpIndex>(base), entry(kB, q * e + u, f.b[u]));
            }
          }
          dummies(ctx, label, e);
        },
        [this, i](VpIndex r, std::vector<Message>& msgs) {
          auto& f = frames_[i][r];
          for (const auto& msg : msgs) (msg.payload[0] == kA ? f.fa : f.fb)[msg.payload[1]] = value_of(msg);
        });
    pl_.step(
        label,
        [=, this](VpContext& ctx) {
          const VpIndex r = ctx.index();
          const std::uint64_t base = r & ~(s - 1), q = r - base;
          if (q != 0) {
            dummies(ctx, label, e);
            return;
          }
          auto& f = frames_[i][r];
          for (std::uint64_t x = 0; x < m; ++x) {
            for (std::uint64_t y = 0; y < m; ++y) {
              std::int64_t acc = sr_zero(sr);
              for (std::uint64_t z = 0; z < m; ++z) {
                acc = sr_add(sr, acc, sr_mul(sr, f.fa[x * m + z], f.fb[z * m + y]));
              }
              const std::uint64_t idx = x * m + y;
              if (idx < e) {
                f.c[idx] = acc;
              } else {
                ctx.send(static_cast<VpIndex>(base + idx / e), entry(kC, idx % e, acc));
              }
            }
          }
          dummies(ctx, label, e);
        },
        [this, i](VpIndex r, std::vector<Message>& msgs) {
          auto& c = frames_[i][r].c;
          for (const auto& msg : msgs) c[msg.payload[1]] = value_of(msg);
        });
  }

  Pipeline pl_;
  const MatrixInstance& in_;
  AlgoOptions opts_;
  std::uint64_t n_;
  unsigned bits_;
  std::vector<std::vector<Frame>> frames_;
};

// ---- four-segment, two-round recursion --------------------------------------

struct Cell {
  std::int64_t a = 0, b = 0, c = 0;
};

// Segment assignment of quadrant (h, x) in the first round.
constexpr std::uint64_t kRound1A[2][2] = {{0, 1}, {3, 2}};  // A_{h,l}
constexpr std::uint64_t kRound1B[2][2] = {{0, 3}, {2, 1}};  // B_{l,k}

class FourWay {
 public:
  FourWay(Machine& m, const MatrixInstance& in, AlgoOptions opts)
      : pl_(m), in_(in), opts_(opts), n_(in.n()), bits_(m.bits()), cells_(in.n()) {}

  MatrixOutput run() {
    for (std::uint64_t r = 0; r < n_; ++r) cells_[r] = {in_.A[r], in_.B[r], sr_zero(in_.semiring)};
    rec(n_, in_.side, 0);
    pl_.finish();
    MatrixOutput C(n_);
    for (std::uint64_t r = 0; r < n_; ++r) C[r] = cells_[r].c;
    return C;
  }

  std::uint64_t max_depth() const { return max_depth_; }

 private:
  void dummies(VpContext& ctx, Label label, std::uint64_t count) {
    if (opts_.dummies) send_dummies(ctx, label, count);
  }

  void deliver(VpIndex r, std::vector<Message>& msgs) {
    for (const auto& msg : msgs) {
      auto& cell = cells_[r];
      (msg.payload[0] == kA ? cell.a : msg.payload[0] == kB ? cell.b : cell.c) = value_of(msg);
    }
  }

  void rec(std::uint64_t s, std::uint64_t m, std::uint64_t depth) {
    max_depth_ = std::max(max_depth_, depth);
    const Semiring sr = in_.semiring;
    if (s == 1) {
      pl_.then([this, sr](VpIndex r) {
        auto& cell = cells_[r];
        cell.c = sr_add(sr, cell.c, sr_mul(sr, cell.a, cell.b));
      });
      return;
    }
    const Label label = bits_ - ilog2(s);
    const std::uint64_t quarter = s / 4, hm = m / 2;
    auto on_delivery = [this](VpIndex r, std::vector<Message>& msgs) { deliver(r, msgs); };

    // Parent layout -> round-one quadrant layout.
    pl_.step(
        label,
        [=, this](VpContext& ctx) {
          const VpIndex r = ctx.index();
          const std::uint64_t base = r & ~(s - 1), q = r - base;
          const std::uint64_t row = q / m, col = q % m, h = row / hm, x = col / hm;
          const std::uint64_t pos = (row % hm) * hm + col % hm;
          const auto& cell = cells_[r];
          ctx.send(static_cast<VpIndex>(base + kRound1A[h][x] * quarter + pos), entry(kA, 0, cell.a));
          ctx.send(static_cast<VpIndex>(base + kRound1B[h][x] * quarter + pos), entry(kB, 0, cell.b));
          ctx.send(static_cast<VpIndex>(base + (2 * h + x) * quarter + pos), entry(kC, 0, cell.c));
          dummies(ctx, label, 3);
        },
        on_delivery);

    rec(quarter, hm, depth + 1);

    // A swaps segments 0<->1, 2<->3; B swaps 0<->2, 1<->3.
    pl_.step(
        label,
        [=, this](VpContext& ctx) {
          const VpIndex r = ctx.index();
          const std::uint64_t base = r & ~(s - 1), q = r - base;
          const std::uint64_t t = q / quarter, pos = q % quarter;
          const auto& cell = cells_[r];
          ctx.send(static_cast<VpIndex>(base + (t ^ 1) * quarter + pos), entry(kA, 0, cell.a));
          ctx.send(static_cast<VpIndex>(base + (t ^ 2) * quarter + pos), entry(kB, 0, cell.b));
          dummies(ctx, label, 2);
        },
        on_delivery);

    rec(quarter, hm, depth + 1);

    // Round-two layout -> parent layout.
    pl_.step(
        label,
        [=, this](VpContext& ctx) {
          const VpIndex r = ctx.index();
          const std::uint64_t base = r & ~(s - 1), q = r - base;
          const std::uint64_t t = q / quarter, pos = q % quarter;
          const std::uint64_t pr = pos / hm, pc = pos % hm;
          const auto& cell = cells_[r];
          // Segment t now holds A from segment t^1 and B from segment t^2 of round one.
          auto quad_of = [](const std::uint64_t (&tab)[2][2], std::uint64_t seg) {
            for (std::uint64_t h = 0; h < 2; ++h) {
              for (std::uint64_t x = 0; x < 2; ++x) {
                if (tab[h][x] == seg) return std::pair{h, x};
              }
            }
            return std::pair<std::uint64_t, std::uint64_t>{0, 0};
          };
          auto send_back = [&](Which w, std::pair<std::uint64_t, std::uint64_t> hx, std::int64_t v) {
            const std::uint64_t row = hx.first * hm + pr, col = hx.second * hm + pc;
            ctx.send(static_cast<VpIndex>(base + row * m + col), entry(w, 0, v));
          };
          send_back(kA, quad_of(kRound1A, t ^ 1), cell.a);
          send_back(kB, quad_of(kRound1B, t ^ 2), cell.b);
          send_back(kC, {t / 2, t % 2}, cell.c);
          dummies(ctx, label, 3);
        },
        on_delivery);
  }

  Pipeline pl_;
  const MatrixInstance& in_;
  AlgoOptions opts_;
  std::uint64_t n_;
  unsigned bits_;
  std::vector<Cell> cells_;
  std::uint64_t max_depth_ = 0;
};

}  // namespace

void require_even_pow2(std::uint64_t n) {
  if (!is_pow2(n) || ilog2(n) % 2 != 0) {
    throw PreconditionError("matrix multiplication needs n an even power of two, got " +
                            std::to_string(n));
  }
}

AlgorithmSpec<MatrixInstance, MatrixOutput> matmul_spec(AlgoOptions opts) {
  AlgorithmSpec<MatrixInstance, MatrixOutput> spec;
  spec.problem = "matmul";
  spec.input_size = [](const MatrixInstance& in) { return in.n(); };
  spec.vp_count = [](std::uint64_t n) {
    require_even_pow2(n);
    return n;
  };
  spec.program = [opts](Machine& m, const MatrixInstance& in) {
    return EightWay(m, in, opts).run();
  };
  spec.input_layout = "VP r holds A[r], B[r] (row-major)";
  spec.output_layout = "VP r holds C[r] (row-major)";
  return spec;
}

AlgorithmSpec<MatrixInstance, MatrixOutput> matmul_space_efficient_spec(AlgoOptions opts) {
  AlgorithmSpec<MatrixInstance, MatrixOutput> spec;
  spec.problem = "matmul_space_efficient";
  spec.input_size = [](const MatrixInstance& in) { return in.n(); };
  spec.vp_count = [](std::uint64_t n) {
    require_even_pow2(n);
    return n;
  };
  spec.program = [opts](Machine& m, const MatrixInstance& in) {
    return FourWay(m, in, opts).run();
  };
  spec.input_layout = "VP r holds A[r], B[r] (row-major)";
  spec.output_layout = "VP r holds C[r] (row-major)";
  return spec;
}

StorageReport matmul_space_efficient_storage(const MatrixInstance& inst, AlgoOptions opts) {
  require_even_pow2(inst.n());
  Machine m(inst.n(), inst.n());
  FourWay alg(m, inst, opts);
  alg.run();
  StorageReport rep;
  rep.resident = 3;
  rep.peak_inbox = m.max_peak_inbox();
  rep.stack_depth = alg.max_depth();
  rep.blowup = static_cast<double>(rep.resident + rep.peak_inbox);
  return rep;
}

}  // namespace netobliv
