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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "netobliv/algorithms/common.hpp"
#include "netobliv/instances.hpp"
#include "netobliv/machine.hpp"

namespace netobliv {

struct AlgoRun {
  Trace trace;
  bool correct = false;
  std::uint64_t digest = 0;  // checksum of the raw output words
};

// n is the input size as reported by the algorithm's spec.
using AlgoRunner = std::function<AlgoRun(std::uint64_t n, Rng& rng, const AlgoOptions& opts, Router* router)>;

// Closed-form lower bound on H(n, p, sigma) with unit constants.
using CostBound = std::function<double(std::uint64_t n, std::uint64_t p, double sigma)>;

struct AlgoEntry {
  std::string id;
  std::vector<std::uint64_t> sizes;
  AlgoRunner run;
  std::function<std::uint64_t(std::uint64_t n)> vp_count;
  CostBound bound;
};

const std::vector<AlgoEntry>& algorithm_registry();

// Throws PreconditionError for unknown ids.
const AlgoEntry& find_algorithm(const std::string& id);

}  // namespace netobliv
