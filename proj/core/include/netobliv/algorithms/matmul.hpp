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

using MatrixOutput = std::vector<std::int64_t>;  // C, row-major

// Eight-segment recursion on M(n); VP r holds A[r], B[r] and ends with C[r].
AlgorithmSpec<MatrixInstance, MatrixOutput> matmul_spec(AlgoOptions opts = {});

// Four-segment, two-round recursion with O(1) entries per VP.
AlgorithmSpec<MatrixInstance, MatrixOutput> matmul_space_efficient_spec(AlgoOptions opts = {});

struct StorageReport {
  std::uint64_t resident = 0;    // matrix entries held per VP at any time
  std::uint64_t peak_inbox = 0;  // largest inbox observed at any VP
  std::uint64_t stack_depth = 0; // recursion frames, each O(1) bits
  double blowup = 0;             // (resident + peak_inbox) / (n / v)
};

StorageReport matmul_space_efficient_storage(const MatrixInstance& inst, AlgoOptions opts = {});

// Throws unless n is an even power of two.
void require_even_pow2(std::uint64_t n);

}  // namespace netobliv
