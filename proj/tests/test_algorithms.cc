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


#include <set>

#include <gtest/gtest.h>

#include "netobliv/algorithms/broadcast.hpp"
#include "netobliv/algorithms/columnsort.hpp"
#include "netobliv/algorithms/fft.hpp"
#include "netobliv/algorithms/matmul.hpp"
#include "netobliv/algorithms/registry.hpp"
#include "netobliv/algorithms/stencil.hpp"
#include "netobliv/folding.hpp"
#include "netobliv/metrics.hpp"

namespace netobliv {
namespace {

Rational h_of(const Trace& t, std::uint64_t p, std::int64_t sigma) {
  return comm_complexity(degree_profile(t, p), {p, Rational(sigma)});
}

TEST(Registry, EveryEntryIsCorrectOnEverySize) {
  Rng rng(seed_from_env());
  for (const auto& e : algorithm_registry()) {
    for (auto n : e.sizes) {
      const auto r = e.run(n, rng, AlgoOptions{}, nullptr);
      EXPECT_TRUE(r.correct) << e.id << " n=" << n;
      EXPECT_EQ(r.trace.v, e.vp_count(n)) << e.id;
      EXPECT_TRUE(validate_cluster_constraint(r.trace).empty()) << e.id;
    }
  }
}

TEST(Registry, LookupByIdAndUnknownId) {
  EXPECT_EQ(find_algorithm("fft").id, "fft");
  EXPECT_THROW(find_algorithm("bogosort"), PreconditionError);
}

TEST(Registry, BoundsArePositive) {
  for (const auto& e : algorithm_registry()) {
    const auto n = e.sizes.front();
    EXPECT_GT(e.bound(n, 2, 0.0), 0.0) << e.id;
    EXPECT_LE(e.bound(n, 2, 0.0), e.bound(n, 2, 8.0)) << e.id;
  }
}

TEST(Registry, DummiesDoNotChangeTheOutput) {
  for (const auto& e : algorithm_registry()) {
    Rng a(9), b(9);
    const auto n = e.sizes.front();
    const auto with = e.run(n, a, AlgoOptions{true}, nullptr);
    const auto without = e.run(n, b, AlgoOptions{false}, nullptr);
    EXPECT_EQ(with.digest, without.digest) << e.id;
  }
}

TEST(Matmul, RejectsOddPowers) {
  EXPECT_NO_THROW(require_even_pow2(64));
  EXPECT_THROW(require_even_pow2(32), PreconditionError);
  EXPECT_THROW(require_even_pow2(48), PreconditionError);
}

TEST(Matmul, SpaceEfficientStorageIsConstant) {
  Rng rng(12);
  for (std::uint64_t n : {16, 64, 256}) {
    const auto st = matmul_space_efficient_storage(random_matrix_instance(n, Semiring::PlusTimes, rng));
    EXPECT_LE(st.blowup, 8.0) << n;
    EXPECT_LE(st.resident, 3u);
  }
}

TEST(Matmul, IdentityProduct) {
  const auto inst = identity_matrix_instance(64, Semiring::PlusTimes);
  const auto out = run(matmul_spec(), inst).output;
  EXPECT_EQ(out, inst.A);
}

TEST(Fft, StrictSizes) {
  EXPECT_TRUE(is_strict_fft_size(16));
  EXPECT_TRUE(is_strict_fft_size(256));
  EXPECT_FALSE(is_strict_fft_size(12));
}

TEST(Fft, SixteenPointProfile) {
  Rng rng(11);
  const auto t = run(fft_spec(), random_fft_instance(16, FftMode::Complex, rng)).trace;
  const auto pr = degree_profile(t, 16);
  EXPECT_EQ(pr.S, (std::vector<std::uint64_t>{1, 0, 2, 4}));
  EXPECT_EQ(pr.F, (std::vector<std::uint64_t>{2, 0, 4, 8}));
  EXPECT_EQ(h_of(t, 4, 0), Rational(7));
}

TEST(Columnsort, ShapeSatisfiesTheRowCondition) {
  const auto s = column_shape(4096);
  EXPECT_EQ(s.rows, 512u);
  EXPECT_EQ(s.cols, 8u);
  for (std::uint64_t m : {64, 512, 4096}) {
    const auto c = column_shape(m);
    EXPECT_EQ(c.rows * c.cols, m);
    EXPECT_GE(c.rows, 2 * (c.cols - 1) * (c.cols - 1)) << m;
  }
}

TEST(Stencil, RecursionDegree) {
  EXPECT_EQ(stencil_recursion_degree(16), 4u);
  EXPECT_EQ(stencil_recursion_degree(64), 8u);
  EXPECT_EQ(stencil_recursion_degree(2), 2u);
  EXPECT_THROW(stencil_recursion_degree(12), PreconditionError);
}

TEST(Stencil, StageCounts) {
  EXPECT_EQ(stencil_stage_count(1, 16), 5u);
  EXPECT_EQ(stencil_stage_count(2, 16), 17u);
  EXPECT_THROW(stencil_stage_count(3, 16), PreconditionError);
}

TEST(Broadcast, ObliviousLabelsAndProfile) {
  Rng rng(13);
  const auto b4 = broadcast_oblivious(random_broadcast_instance(4, rng));
  EXPECT_EQ(b4.trace.labels(), (std::vector<Label>{0, 1}));
  for (const auto v : b4.output) EXPECT_EQ(v, b4.output.front());
  const auto b16 = broadcast_oblivious(random_broadcast_instance(16, rng));
  const auto pr = degree_profile(b16.trace, 8);
  EXPECT_EQ(pr.S, (std::vector<std::uint64_t>{1, 1, 1}));
  EXPECT_EQ(pr.F, (std::vector<std::uint64_t>{1, 1, 1}));
  for (std::int64_t s : {0, 5, 64}) EXPECT_EQ(h_of(b16.trace, 8, s), Rational(3 * (1 + s)));
}

TEST(Broadcast, AwareCosts) {
  Rng rng(14);
  for (std::int64_t s : {0, 3, 16}) {
    EXPECT_EQ(h_of(broadcast_aware(random_broadcast_instance(2, rng), 2, Rational(s)).trace, 2, s), Rational(1 + s));
  }
  const auto a4 = broadcast_aware(random_broadcast_instance(4, rng), 4, Rational(0));
  EXPECT_EQ(h_of(a4.trace, 4, 0), Rational(2));
  const auto in = random_broadcast_instance(256, rng);
  const auto a = broadcast_aware(in, 256, Rational(16));
  EXPECT_EQ(broadcast_fanout(Rational(16)), 16u);
  EXPECT_LE(h_of(a.trace, 256, 16), Rational(4 * 16 * 2 + 4 * 16));
  for (const auto v : a.output) EXPECT_EQ(v, in.V.front());
  EXPECT_TRUE(validate_cluster_constraint(a.trace).empty());
}

TEST(Broadcast, AwareBeatsObliviousForLargeLatency) {
  Rng rng(15);
  const auto in = random_broadcast_instance(256, rng);
  const auto obl = broadcast_oblivious(in);
  const auto aware = broadcast_aware(in, 256, Rational(64));
  EXPECT_LT(h_of(aware.trace, 256, 64), h_of(obl.trace, 256, 64));
}

TEST(Broadcast, GapRatio) {
  Rng rng(16);
  const auto obl = broadcast_oblivious(random_broadcast_instance(256, rng)).trace;
  const std::vector<Rational> grid{Rational(0), Rational(16), Rational(256)};
  EXPECT_THROW(gap_ratio(obl, 256, Rational(8), Rational(4), grid), PreconditionError);
  EXPECT_THROW(gap_ratio(obl, 256, Rational(1), Rational(2), grid), PreconditionError);
  EXPECT_EQ(gap_ratio(obl, 256, Rational(0), Rational(0), grid), Rational(1));
  EXPECT_GE(gap_ratio(obl, 256, Rational(0), Rational(256), grid), Rational(2));
}

}  // namespace
}  // namespace netobliv
