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


#include <map>

#include <benchmark/benchmark.h>

#include "netobliv/algorithms/fft.hpp"
#include "netobliv/algorithms/matmul.hpp"
#include "netobliv/algorithms/registry.hpp"
#include "netobliv/folding.hpp"
#include "netobliv/metrics.hpp"
#include "netobliv/protocol.hpp"

namespace {

using namespace netobliv;

const Trace& matmul_trace(std::uint64_t n) {
  static std::map<std::uint64_t, Trace> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    Rng rng(1);
    it = cache.emplace(n, run(matmul_spec(), random_matrix_instance(n, Semiring::PlusTimes, rng)).trace).first;
  }
  return it->second;
}

void BM_Fold(benchmark::State& state) {
  const auto& t = matmul_trace(4096);
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(degree_profile(t, p));
}
BENCHMARK(BM_Fold)->RangeMultiplier(8)->Range(8, 4096);

void BM_AllProfiles(benchmark::State& state) {
  const auto& t = matmul_trace(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all_degree_profiles(t));
}
BENCHMARK(BM_AllProfiles)->Arg(256)->Arg(4096);

void BM_Wiseness(benchmark::State& state) {
  const auto& t = matmul_trace(4096);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_wiseness(t, 512));
}
BENCHMARK(BM_Wiseness);

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  Rng rng(2);
  const auto inst = random_matrix_instance(n, Semiring::PlusTimes, rng);
  for (auto _ : state) benchmark::DoNotOptimize(run(matmul_spec(), inst));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Matmul)->Arg(64)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_Fft(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  Rng rng(3);
  const auto inst = random_fft_instance(n, FftMode::Complex, rng);
  for (auto _ : state) benchmark::DoNotOptimize(run(fft_spec(), inst));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Fft)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_NovelMatmul(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  Rng rng(4);
  const auto inst = random_matrix_instance(256, Semiring::PlusTimes, rng);
  const auto params = DbspParams::geometric(p, Rational(2), Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(execute_novel(matmul_spec(), inst, p, params));
}
BENCHMARK(BM_NovelMatmul)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
