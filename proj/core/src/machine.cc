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

#include "netobliv/machine.hpp"

#include <algorithm>
#include <bit>

namespace netobliv {

std::vector<std::uint64_t> SuperstepRecord::sent(std::uint64_t v) const {
  std::vector<std::uint64_t> out(v, 0);
  for (const Pair& pr : pairs) ++out.at(pr.src);
  return out;
}

std::vector<std::uint64_t> SuperstepRecord::received(std::uint64_t v) const {
  std::vector<std::uint64_t> out(v, 0);
  for (const Pair& pr : pairs) ++out.at(pr.dst);
  return out;
}

std::vector<Label> Trace::labels() const {
  std::vector<Label> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.label);
  return out;
}

ClusterViolation::ClusterViolation(std::uint64_t s, VpIndex a, VpIndex b)
    : ModelError("cluster violation in superstep " + std::to_string(s) + ": " +
                 std::to_string(a) + " -> " + std::to_string(b)),
      seq(s),
      src(a),
      dst(b) {}

std::vector<Violation> validate_cluster_constraint(const Trace& trace) {
  std::vector<Violation> out;
  const unsigned bits = ilog2(trace.v);
  for (const auto& rec : trace.records) {
    for (const Pair& pr : rec.pairs) {
      if (!same_cluster(pr.src, pr.dst, rec.label, bits)) {
        out.push_back({rec.seq, rec.label, pr.src, pr.dst});
      }
    }
  }
  return out;
}

std::uint64_t VpContext::machine_size() const { return machine_.size(); }

void VpContext::send(VpIndex dst, const Payload& payload, bool dummy) {
  machine_.post(index_, dst, payload, dummy);
}

std::vector<Message> VpContext::receive() { return machine_.drain(index_); }

Machine::Machine(std::uint64_t v, std::uint64_t n, Router* router)
    : v_(v), bits_(0), router_(router) {
  require_pow2(v, "v");
  bits_ = ilog2(v);
  trace_.v = v;
  trace_.n = n;
  send_ordinal_.assign(v, 0);
  inbox_.resize(v);
  peak_inbox_.assign(v, 0);
}

std::uint64_t Machine::max_peak_inbox() const {
  return peak_inbox_.empty() ? 0 : *std::max_element(peak_inbox_.begin(), peak_inbox_.end());
}

void Machine::post(VpIndex src, VpIndex dst, const Payload& payload, bool dummy) {
  if (!in_superstep_) throw ModelError("send outside of a superstep");
  if (dst >= v_) {
    throw ModelError("send to out-of-range VP " + std::to_string(dst) + " from " +
                     std::to_string(src));
  }
  const std::uint64_t seq = trace_.records.size();
  if (!same_cluster(src, dst, current_label_, bits_)) throw ClusterViolation(seq, src, dst);
  outgoing_.push_back({src, dst, payload, seq, dummy, send_ordinal_[src]++});
}

std::vector<Message> Machine::drain(VpIndex r) {
  std::vector<Message> out;
  out.swap(inbox_.at(r));
  std::sort(out.begin(), out.end(), [](const Message& a, const Message& b) {
    if (a.superstep_seq != b.superstep_seq) return a.superstep_seq < b.superstep_seq;
    if (a.src != b.src) return a.src < b.src;
    return a.ordinal < b.ordinal;
  });
  return out;
}

void Machine::superstep(Label label, const Body& body) {
  if (label >= std::max(1u, bits_)) {
    throw PreconditionError("superstep label " + std::to_string(label) +
                            " out of range for v=" + std::to_string(v_));
  }
  current_label_ = label;
  in_superstep_ = true;
  outgoing_.clear();
  std::fill(send_ordinal_.begin(), send_ordinal_.end(), 0);
  for (std::uint64_t r = 0; r < v_; ++r) {
    VpContext ctx(*this, static_cast<VpIndex>(r));
    body(ctx);
  }
  in_superstep_ = false;

  SuperstepRecord rec;
  rec.label = label;
  rec.seq = trace_.records.size();
  rec.pairs.reserve(outgoing_.size());
  for (const Message& msg : outgoing_) rec.pairs.push_back({msg.src, msg.dst, msg.dummy});

  std::vector<Message> delivered =
      router_ ? router_->route(rec, v_, std::move(outgoing_)) : std::move(outgoing_);
  outgoing_.clear();
  for (Message& msg : delivered) {
    if (msg.dummy) continue;
    inbox_[msg.dst].push_back(std::move(msg));
  }
  for (std::uint64_t r = 0; r < v_; ++r) {
    peak_inbox_[r] = std::max<std::uint64_t>(peak_inbox_[r], inbox_[r].size());
  }
  trace_.records.push_back(std::move(rec));
}

void Machine::finalize(const Body& body) {
  for (std::uint64_t r = 0; r < v_; ++r) {
    VpContext ctx(*this, static_cast<VpIndex>(r));
    body(ctx);
  }
}

bool same_static_profile(const Trace& a, const Trace& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    const auto& x = a.records[k];
    const auto& y = b.records[k];
    if (x.label != y.label || x.pairs.size() != y.pairs.size()) return false;
    auto px = x.pairs;
    auto py = y.pairs;
    std::sort(px.begin(), px.end());
    std::sort(py.begin(), py.end());
    if (px != py) return false;
  }
  return true;
}

Payload pack_double(double a, double b) {
  return {std::bit_cast<std::uint64_t>(a), std::bit_cast<std::uint64_t>(b), 0, 0};
}

double unpack_double(std::uint64_t word) { return std::bit_cast<double>(word); }

}  // namespace netobliv
