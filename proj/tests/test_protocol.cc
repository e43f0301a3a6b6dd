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


#include <numeric>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "netobliv/algorithms/matmul.hpp"
#include "netobliv/algorithms/registry.hpp"
#include "netobliv/folding.hpp"
#include "netobliv/metrics.hpp"
#include "netobliv/protocol.hpp"

namespace netobliv {
namespace {

TEST(Prefix, TreeRounds) {
  const auto r = prefix_within_cluster({1, 1, 1, 1});
  EXPECT_EQ(r.prefix, (std::vector<std::int64_t>{1, 2, 3, 4}));
  EXPECT_EQ(r.trace.labels(), (std::vector<Label>{0, 0, 0}));
  EXPECT_TRUE(prefix_within_cluster({5}).trace.records.empty());
  EXPECT_EQ(prefix_within_cluster({5}).prefix, (std::vector<std::int64_t>{5}));
  EXPECT_THROW(prefix_within_cluster({1, 2, 3}), PreconditionError);
}

TEST(Prefix, HierarchicalLabels) {
  const auto r = prefix_within_cluster(std::vector<std::int64_t>(16, 1), PrefixStrategy::Hierarchical);
  EXPECT_EQ(r.trace.labels(), (std::vector<Label>{3, 2, 1, 0, 0, 1, 2, 3}));
  EXPECT_TRUE(validate_cluster_constraint(r.trace).empty());
}

TEST(Prefix, RandomAgainstScan) {
  Rng rng(21);
  std::uniform_int_distribution<std::int64_t> d(-50, 50);
  for (auto strategy : {PrefixStrategy::Tree, PrefixStrategy::Hierarchical}) {
    std::vector<std::int64_t> v(64);
    for (auto& x : v) x = d(rng);
    std::vector<std::int64_t> want(v.size());
    std::inclusive_scan(v.begin(), v.end(), want.begin());
    EXPECT_EQ(prefix_within_cluster(v, strategy).prefix, want);
  }
}

TEST(NovelRouter, SameOutputAndLemma6OnRegistry) {
  for (const auto& e : algorithm_registry()) {
    const auto n = e.sizes.front();
    const auto p = std::min<std::uint64_t>(16, e.vp_count(n));
    Rng a(22), b(22);
    const auto plain = e.run(n, a, AlgoOptions{}, nullptr);
    NovelRouter router(p);
    const auto novel = e.run(n, b, AlgoOptions{}, &router);
    EXPECT_TRUE(novel.correct) << e.id;
    EXPECT_EQ(novel.digest, plain.digest) << e.id;
    EXPECT_TRUE(validate_cluster_constraint(router.protocol_trace().trace).empty()) << e.id;
    const auto rep = check_lemma6(router.protocol_trace(), novel.trace, p);
    EXPECT_TRUE(rep.ok) << e.id << ": " << rep.first_failure;
  }
}

TEST(NovelRouter, TwoProcessors) {
  Rng rng(23);
  const auto inst = random_matrix_instance(64, Semiring::PlusTimes, rng);
  const auto res = execute_novel(matmul_spec(), inst, 2, DbspParams::flat(2));
  EXPECT_EQ(res.output, run(matmul_spec(), inst).output);
}

TEST(NovelRouter, HierarchicalPrefixKeepsOutput) {
  Rng rng(24);
  const auto inst = random_matrix_instance(256, Semiring::MinPlus, rng);
  const auto res = execute_novel(matmul_spec(), inst, 16, DbspParams::flat(16), PrefixStrategy::Hierarchical);
  EXPECT_EQ(res.output, run(matmul_spec(), inst).output);
  EXPECT_TRUE(validate_cluster_constraint(res.protocol.trace).empty());
  EXPECT_TRUE(check_lemma6(res.protocol, res.base, 16).ok);
}

TEST(NovelRouter, SingleSenderGetsCheaper) {
  const auto params = DbspParams::geometric(16, Rational(2), Rational(1));
  const std::vector<std::pair<std::uint64_t, Rational>> frozen{
      {64, Rational(203, 4)}, {256, Rational(647, 4)}, {1024, Rational(2423, 4)}};
  for (const auto& [n, D] : frozen) {
    const auto res = execute_novel(single_sender_spec(), std::vector<std::uint64_t>(n, 1), 16, params);
    EXPECT_EQ(res.standard_D, Rational(static_cast<std::int64_t>(n)));
    EXPECT_EQ(res.D, D) << n;
    EXPECT_LT(res.D, res.standard_D);
  }
}

TEST(NovelRouter, BalancedMatchingDoesNotGetCheaper) {
  const auto params = DbspParams::geometric(16, Rational(2), Rational(1));
  const auto res = execute_novel(balanced_matching_spec(), std::vector<std::uint64_t>(64, 1), 16, params);
  EXPECT_EQ(res.standard_D, Rational(4));
  EXPECT_EQ(res.D, Rational(47, 2));
  EXPECT_GE(res.D, res.standard_D);
}

TEST(NovelRouter, JsonlCarriesTags) {
  const auto res = execute_novel(single_sender_spec(), std::vector<std::uint64_t>(64, 1), 16, DbspParams::flat(16));
  std::ostringstream os;
  write_protocol_trace_jsonl(os, res.protocol);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  const auto head = nlohmann::json::parse(line);
  EXPECT_EQ(head["p"], 16);
  EXPECT_EQ(head["v"], 16);
  std::size_t count = 0;
  while (std::getline(is, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("origin_seq") && j.contains("phase") && j.contains("k"));
    ++count;
  }
  EXPECT_EQ(count, res.protocol.trace.records.size());
  EXPECT_EQ(res.protocol.tags.size(), count);
}

TEST(NovelRouter, DegreeCheckCatchesInflatedTraces) {
  const auto res = execute_novel(single_sender_spec(), std::vector<std::uint64_t>(64, 1), 16, DbspParams::flat(16));
  auto pt = res.protocol;
  ASSERT_EQ(res.base.records.front().label, 0u);
  // Extra moves inside a 1-cluster, charged to the first superstep.
  for (int i = 0; i < 3; ++i) {
    SuperstepRecord rec;
    rec.label = 1;
    rec.seq = pt.trace.records.size();
    for (VpIndex s = 1; s < 8; ++s) rec.pairs.push_back({s, 0, false});
    pt.trace.records.push_back(rec);
    pt.tags.push_back({0, ProtocolPhase::AscendMove, 1});
  }
  EXPECT_FALSE(check_lemma6(pt, res.base, 16).ok);
}

TEST(Fullness, OptimalityReport) {
  const auto res = execute_novel(single_sender_spec(), std::vector<std::uint64_t>(64, 1), 16, DbspParams::flat(16));
  SigmaRange range{{0, 0, 0, 0}, {64, 64, 64, 64}};
  const auto rep = fullness_optimality_report(res.base, res.protocol, 16, range);
  EXPECT_EQ(rep.gamma, Rational(8));
  EXPECT_DOUBLE_EQ(rep.log_sq_p, 16.0);
  EXPECT_FALSE(rep.points.empty());
  for (const auto& pt : rep.points) EXPECT_LE(pt.c, rep.max_c);
  EXPECT_THROW(fullness_optimality_report(res.base, res.protocol, 16, SigmaRange{{0}, {1}}), PreconditionError);
}

}  // namespace
}  // namespace netobliv
