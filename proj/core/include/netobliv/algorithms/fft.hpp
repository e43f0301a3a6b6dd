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

#include "netobliv/algorithms/common.hpp"
#include "netobliv/instances.hpp"
#include "netobliv/machine.hpp"

namespace netobliv {

// Recursive sqrt(n) x sqrt(n) decomposition of the FFT DAG on M(n). The
// first set of subDAGs has 2^floor(L/2) inputs for an L-level range.
AlgorithmSpec<FftInstance, FftOutput> fft_spec(AlgoOptions opts = {});

// True iff n = 2^(2^k) for some k >= 0.
bool is_strict_fft_size(std::uint64_t n);

}  // namespace netobliv
