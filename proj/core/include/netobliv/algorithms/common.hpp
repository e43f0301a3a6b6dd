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
#include <vector>

#include "netobliv/machine.hpp"

namespace netobliv {

struct AlgoOptions {
  bool dummies = true;
};

// Within the first segment of a `label`-superstep (size s = v >> label),
// VP r < s/2 sends `count` dummy messages to VP r + s/2.
void send_dummies(VpContext& ctx, Label label, std::uint64_t count);

// Runs supersteps while carrying, from one superstep to the next, the
// per-VP work that consumes the messages just delivered.
class Pipeline {
 public:
  using Inbox = std::function<void(VpIndex, std::vector<Message>&)>;
  using Work = std::function<void(VpContext&)>;
  using Local = std::function<void(VpIndex)>;

  explicit Pipeline(Machine& m) : m_(m) {}

  // Superstep: drain inbox into the pending handlers, run `work`, sync(label).
  // `on_delivery` will consume the messages sent here.
  void step(Label label, const Work& work, Inbox on_delivery = nullptr);

  // Local computation appended to whatever runs at the start of the next superstep.
  void then(Local local);

  // Consumes pending deliveries after the last barrier.
  void finish();

  Machine& machine() { return m_; }

 private:
  Machine& m_;
  std::vector<Inbox> pending_;
};

}  // namespace netobliv
