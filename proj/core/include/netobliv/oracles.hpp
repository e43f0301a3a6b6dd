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

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "netobliv/instances.hpp"

namespace netobliv {

struct OracleResult {
  std::string problem;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> payload;
  std::uint64_t checksum = 0;
};

std::uint64_t checksum(const std::vector<std::uint64_t>& words);

std::vector<std::int64_t> oracle_matmul(const std::vector<std::int64_t>& A,
                                        const std::vector<std::int64_t>& B, std::uint64_t side,
                                        Semiring s);

std::vector<std::complex<double>> oracle_dft(const std::vector<std::complex<double>>& x);
std::vector<std::uint64_t> oracle_ntt(const std::vector<std::uint64_t>& x);

// rank[i] = number of keys smaller than keys[i].
std::vector<std::uint64_t> oracle_sort(const std::vector<std::uint64_t>& keys);

// Values of all member nodes, indexed by stencil_node_index over the extent.
// Non-member slots hold zero.
std::vector<std::uint64_t> oracle_stencil(const StencilDag& dag);
std::uint64_t stencil_member_count(const StencilDag& dag);

std::vector<std::int64_t> oracle_prefix(const std::vector<std::int64_t>& values);

OracleResult oracle_result(const std::string& problem, std::uint64_t n,
                           std::vector<std::uint64_t> payload);

}  // namespace netobliv
