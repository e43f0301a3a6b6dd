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

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace netobliv {

using VpIndex = std::uint32_t;
using Label = unsigned;

// Exact arithmetic for every cost metric.
using Rational = boost::rational<std::int64_t>;

// Base class for model-level faults (bad preconditions, illegal sends).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public ModelError {
 public:
  using ModelError::ModelError;
};

// Raised when a metric is undefined for the given trace (e.g. no traffic).
class MetricUndefined : public ModelError {
 public:
  using ModelError::ModelError;
};

constexpr bool is_pow2(std::uint64_t x) { return x != 0 && std::has_single_bit(x); }

// Exact log2 of a power of two.
constexpr unsigned ilog2(std::uint64_t x) {
  return static_cast<unsigned>(std::bit_width(x) - 1);
}

// log x := max{1, log2 x}, applied wherever cost formulas use log.
constexpr unsigned log_conv(std::uint64_t x) {
  const unsigned l = x == 0 ? 0 : ilog2(x);
  return l < 1 ? 1 : l;
}

inline void require_pow2(std::uint64_t x, const char* what) {
  if (!is_pow2(x)) {
    throw PreconditionError(std::string(what) + " must be a power of two, got " +
                            std::to_string(x));
  }
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace netobliv
