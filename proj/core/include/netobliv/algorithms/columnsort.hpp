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

// rank[i] is the final position of keys[i].
using SortOutput = std::vector<std::uint64_t>;

// Segments of at most this many VPs are sorted by gathering at their leader.
inline constexpr std::uint64_t kSortBaseSegment = 16;

struct ColumnShape {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
};

// Column length r (a power of two near m^(2/3) with r >= 2(s-1)^2) and s = m/r.
ColumnShape column_shape(std::uint64_t m);

AlgorithmSpec<SortInstance, SortOutput> columnsort_spec(AlgoOptions opts = {});

}  // namespace netobliv
