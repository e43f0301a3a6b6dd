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
#include <vector>

#include "netobliv/algorithms/common.hpp"
#include "netobliv/instances.hpp"
#include "netobliv/machine.hpp"

namespace netobliv {

using BroadcastOutput = std::vector<std::uint64_t>;

// Smallest power of two >= max{2, sigma}.
std::uint64_t broadcast_fanout(const Rational& sigma);

// Fan-out broadcast tuned for M(p, sigma); runs directly on p processors.
RunResult<BroadcastOutput> broadcast_aware(const BroadcastInstance& in, std::uint64_t p,
                                           const Rational& sigma, Router* router = nullptr);

// Binary doubling on M(n), independent of sigma.
AlgorithmSpec<BroadcastInstance, BroadcastOutput> broadcast_oblivious_spec();

RunResult<BroadcastOutput> broadcast_oblivious(const BroadcastInstance& in);

// max over sigma in grid, sigma1 <= sigma <= sigma2, of H_oblivious / H_aware.
Rational gap_ratio(const Trace& oblivious, std::uint64_t p, const Rational& sigma1,
                   const Rational& sigma2, const std::vector<Rational>& grid);

}  // namespace netobliv
