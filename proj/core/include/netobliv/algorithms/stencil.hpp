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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "netobliv/algorithms/common.hpp"
#include "netobliv/instances.hpp"
#include "netobliv/machine.hpp"

namespace netobliv {

// Node values indexed by stencil_node_index over the full (n, d) grid.
using StencilOutput = std::vector<std::uint64_t>;

// k = 2^ceil(sqrt(log n)).
std::uint64_t stencil_recursion_degree(std::uint64_t n);

// Number of nonempty top-level tiles (stages) for an (n, d) grid.
std::size_t stencil_stage_count(unsigned d, std::uint64_t n);

// d = 1 runs on M(n), d = 2 on M(n^2). Input x (or x*n + y) starts at VP x (or x*n + y).
AlgorithmSpec<StencilInstance, StencilOutput> stencil_spec(unsigned d, AlgoOptions opts = {});

}  // namespace netobliv
