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

#include "netobliv/algorithms/registry.hpp"

#include <bit>
#include <cmath>
#include <complex>

#include "netobliv/algorithms/broadcast.hpp"
#include "netobliv/algorithms/columnsort.hpp"
#include "netobliv/algorithms/fft.hpp"
#include "netobliv/algorithms/matmul.hpp"
#include "netobliv/algorithms/stencil.hpp"
#include "netobliv/oracles.hpp"

namespace netobliv {

namespace {

double lg(double x) { return std::log2(x); }

double mm_bound(std::uint64_t n, std::uint64_t p, double sigma) {
  return static_cast<double>(n) / std::cbrt(static_cast<double>(p) * static_cast<double>(p)) + sigma;
}

// Shared by FFT and sorting.
double fft_bound(std::uint64_t n, std::uint64_t p, double sigma) {
  const double nn = static_cast<double>(n), pp = static_cast<double>(p);
  if (p >= n) return nn * lg(nn) / pp + sigma;
  return nn * lg(nn) / (pp * lg(nn / pp)) + sigma;
}

double broadcast_bound(std::uint64_t p, double sigma) {
  const double k = std::max(2.0, sigma);
  return k * lg(static_cast<double>(p)) / lg(k);
}

std::vector<std::uint64_t> words(const std::vector<std::int64_t>& v) {
  return {v.begin(), v.end()};
}

AlgoEntry matmul_entry(std::string id, bool space_efficient, Semiring sr) {
  return {std::move(id), {16, 64, 256, 4096}, [space_efficient, sr](std::uint64_t n, Rng& rng, const AlgoOptions& opts, Router* router) {
            const auto inst = random_matrix_instance(n, sr, rng);
            const auto spec = space_efficient ? matmul_space_efficient_spec(opts) : matmul_spec(opts);
            auto res = run(spec, inst, router);
            const bool ok = res.output == oracle_matmul(inst.A, inst.B, inst.side, sr);
            return AlgoRun{std::move(res.trace), ok, checksum(words(res.output))};
          },
          [space_efficient](std::uint64_t n) {
            return (space_efficient ? matmul_space_efficient_spec() : matmul_spec()).vp_count(n);
          },
          mm_bound};
}

AlgoEntry fft_entry(std::string id, FftMode mode) {
  return {std::move(id), {16, 256, 4096}, [mode](std::uint64_t n, Rng& rng, const AlgoOptions& opts, Router* router) {
            const auto inst = random_fft_instance(n, mode, rng);
            auto res = run(fft_spec(opts), inst, router);
            AlgoRun out{std::move(res.trace), false, 0};
            if (mode == FftMode::Modular) {
              out.correct = res.output.Xm == oracle_ntt(inst.xm);
              out.digest = checksum(res.output.Xm);
              return out;
            }
            const auto ref = oracle_dft(inst.x);
            double scale = 0;
            for (const auto& z : ref) scale = std::max(scale, std::abs(z));
            out.correct = res.output.X.size() == ref.size();
            std::vector<std::uint64_t> bits;
            for (std::size_t i = 0; out.correct && i < ref.size(); ++i) {
              if (std::abs(res.output.X[i] - ref[i]) > 1e-9 * std::max(1.0, scale)) out.correct = false;
            }
            for (const auto& z : res.output.X) {
              bits.push_back(std::bit_cast<std::uint64_t>(z.real()));
              bits.push_back(std::bit_cast<std::uint64_t>(z.imag()));
            }
            out.digest = checksum(bits);
            return out;
          },
          [](std::uint64_t n) { return fft_spec().vp_count(n); }, fft_bound};
}

std::vector<AlgoEntry> build() {
  std::vector<AlgoEntry> r;
  r.push_back(matmul_entry("matmul", false, Semiring::PlusTimes));
  r.push_back(matmul_entry("matmul_minplus", false, Semiring::MinPlus));
  r.push_back(matmul_entry("matmul_space_efficient", true, Semiring::PlusTimes));
  r.push_back(fft_entry("fft", FftMode::Complex));
  r.push_back(fft_entry("fft_ntt", FftMode::Modular));
  r.push_back({"columnsort", {64, 512, 4096}, [](std::uint64_t n, Rng& rng, const AlgoOptions& opts, Router* router) {
                 const auto inst = random_sort_instance(n, rng);
                 auto res = run(columnsort_spec(opts), inst, router);
                 const bool ok = res.output == oracle_sort(inst.keys);
                 return AlgoRun{std::move(res.trace), ok, checksum(res.output)};
               },
               [](std::uint64_t n) { return columnsort_spec().vp_count(n); }, fft_bound});
  for (unsigned d : {1u, 2u}) {
    r.push_back({d == 1 ? "stencil_1d" : "stencil_2d",
                 d == 1 ? std::vector<std::uint64_t>{16, 64, 256} : std::vector<std::uint64_t>{4, 8, 16},
                 [d](std::uint64_t n, Rng& rng, const AlgoOptions& opts, Router* router) {
                   const auto inst = random_stencil_instance(d, n, NodeFunction::HashMix, rng);
                   auto res = run(stencil_spec(d, opts), inst, router);
                   const bool ok = res.output == oracle_stencil(full_stencil_dag(inst));
                   return AlgoRun{std::move(res.trace), ok, checksum(res.output)};
                 },
                 [d](std::uint64_t n) { return stencil_spec(d).vp_count(n); },
                 [d](std::uint64_t n, std::uint64_t p, double sigma) {
                   const double nd = std::pow(static_cast<double>(n), d);
                   return nd / std::pow(static_cast<double>(p), (d - 1.0) / d) + sigma;
                 }});
  }
  r.push_back({"broadcast_oblivious", {16, 256, 1024}, [](std::uint64_t n, Rng& rng, const AlgoOptions&, Router* router) {
                 const auto inst = random_broadcast_instance(n, rng);
                 auto res = run(broadcast_oblivious_spec(), inst, router);
                 const bool ok = res.output == BroadcastOutput(n, inst.V[0]);
                 return AlgoRun{std::move(res.trace), ok, checksum(res.output)};
               },
               [](std::uint64_t n) { return broadcast_oblivious_spec().vp_count(n); },
               [](std::uint64_t, std::uint64_t p, double sigma) { return broadcast_bound(p, sigma); }});
  return r;
}

}  // namespace

const std::vector<AlgoEntry>& algorithm_registry() {
  static const std::vector<AlgoEntry> entries = build();
  return entries;
}

const AlgoEntry& find_algorithm(const std::string& id) {
  for (const auto& e : algorithm_registry()) {
    if (e.id == id) return e;
  }
  throw PreconditionError("unknown algorithm '" + id + "'");
}

}  // namespace netobliv
