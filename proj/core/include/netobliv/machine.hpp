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

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "netobliv/common.hpp"

namespace netobliv {

// A message carries a constant number of machine words.
using Payload = std::array<std::uint64_t, 4>;

struct Message {
  VpIndex src = 0;
  VpIndex dst = 0;
  Payload payload{};
  std::uint64_t superstep_seq = 0;
  bool dummy = false;
  std::uint64_t ordinal = 0;  // per-sender send ordinal within the superstep
};

struct Pair {
  VpIndex src = 0;
  VpIndex dst = 0;
  bool dummy = false;

  friend auto operator<=>(const Pair&, const Pair&) = default;
};

struct SuperstepRecord {
  Label label = 0;
  std::uint64_t seq = 0;
  std::vector<Pair> pairs;

  // Per-VP counts over a machine of size v (self-sends included).
  std::vector<std::uint64_t> sent(std::uint64_t v) const;
  std::vector<std::uint64_t> received(std::uint64_t v) const;
};

struct Trace {
  std::uint64_t v = 1;
  std::uint64_t n = 0;
  std::vector<SuperstepRecord> records;

  std::vector<Label> labels() const;
};

class ClusterViolation : public ModelError {
 public:
  ClusterViolation(std::uint64_t seq, VpIndex src, VpIndex dst);
  std::uint64_t seq;
  VpIndex src;
  VpIndex dst;
};

struct Violation {
  std::uint64_t seq = 0;
  Label label = 0;
  VpIndex src = 0;
  VpIndex dst = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// True iff src and dst agree in the `label` most significant of `bits` bits.
constexpr bool same_cluster(VpIndex src, VpIndex dst, Label label, unsigned bits) {
  if (label == 0) return true;
  if (label >= bits) return src == dst;
  const unsigned shift = bits - label;
  return (src >> shift) == (dst >> shift);
}

std::vector<Violation> validate_cluster_constraint(const Trace& trace);

// Delivery hook invoked at every barrier. The router may move messages along
// any path as long as each one ends up at its destination.
class Router {
 public:
  virtual ~Router() = default;
  virtual std::vector<Message> route(const SuperstepRecord& record, std::uint64_t v,
                                     std::vector<Message> messages) = 0;
};

class Machine;

class VpContext {
 public:
  VpIndex index() const { return index_; }
  std::uint64_t machine_size() const;
  void send(VpIndex dst, const Payload& payload, bool dummy = false);
  // Drains this VP's inbox, ordered by (sender, send ordinal).
  std::vector<Message> receive();

 private:
  friend class Machine;
  VpContext(Machine& m, VpIndex r) : machine_(m), index_(r) {}
  Machine& machine_;
  VpIndex index_;
};

class Machine {
 public:
  using Body = std::function<void(VpContext&)>;

  Machine(std::uint64_t v, std::uint64_t n, Router* router = nullptr);

  std::uint64_t size() const { return v_; }
  unsigned bits() const { return bits_; }

  // Runs body once per VP in ascending index order, then sync(label).
  void superstep(Label label, const Body& body);
  // Local computation after the last barrier: may receive, may not send, and
  // adds no superstep to the trace.
  void finalize(const Body& body);

  const Trace& trace() const { return trace_; }
  Trace take_trace() { return std::move(trace_); }

  std::uint64_t peak_inbox(VpIndex r) const { return peak_inbox_.at(r); }
  std::uint64_t max_peak_inbox() const;

 private:
  friend class VpContext;
  void post(VpIndex src, VpIndex dst, const Payload& payload, bool dummy);
  std::vector<Message> drain(VpIndex r);

  std::uint64_t v_;
  unsigned bits_;
  Router* router_;
  Trace trace_;
  Label current_label_ = 0;
  bool in_superstep_ = false;
  std::vector<Message> outgoing_;
  std::vector<std::uint64_t> send_ordinal_;
  std::vector<std::vector<Message>> inbox_;
  std::vector<std::uint64_t> peak_inbox_;
};

// A runnable network-oblivious program together with its size function.
template <class In, class Out>
struct AlgorithmSpec {
  std::string problem;
  std::function<std::uint64_t(const In&)> input_size;
  std::function<std::uint64_t(std::uint64_t)> vp_count;
  std::function<Out(Machine&, const In&)> program;
  std::string input_layout;
  std::string output_layout;
};

template <class Out>
struct RunResult {
  Out output;
  Trace trace;
};

template <class In, class Out>
RunResult<Out> run(const AlgorithmSpec<In, Out>& spec, const In& input,
                   Router* router = nullptr) {
  const std::uint64_t n = spec.input_size(input);
  const std::uint64_t v = spec.vp_count(n);
  require_pow2(v, "v(n)");
  Machine m(v, n, router);
  Out out = spec.program(m, input);
  return {std::move(out), m.take_trace()};
}

// Same superstep count, label sequence and per-superstep pair multisets.
bool same_static_profile(const Trace& a, const Trace& b);

template <class In, class Out>
bool check_static(const AlgorithmSpec<In, Out>& spec, const std::vector<In>& inputs) {
  if (inputs.empty()) return true;
  const Trace first = run(spec, inputs.front()).trace;
  for (std::size_t k = 1; k < inputs.size(); ++k) {
    if (!same_static_profile(first, run(spec, inputs[k]).trace)) return false;
  }
  return true;
}

Payload pack_double(double a, double b = 0.0);
double unpack_double(std::uint64_t word);

}  // namespace netobliv
