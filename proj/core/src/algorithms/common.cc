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

#include "netobliv/algorithms/common.hpp"

namespace netobliv {

void send_dummies(VpContext& ctx, Label label, std::uint64_t count) {
  const std::uint64_t s = ctx.machine_size() >> label;
  if (s < 2 || count == 0) return;
  const VpIndex r = ctx.index();
  if (r >= s / 2) return;
  const auto dst = static_cast<VpIndex>(r + s / 2);
  for (std::uint64_t c = 0; c < count; ++c) ctx.send(dst, Payload{}, true);
}

void Pipeline::step(Label label, const Work& work, Inbox on_delivery) {
  auto pending = std::move(pending_);
  pending_.clear();
  m_.superstep(label, [&](VpContext& ctx) {
    auto msgs = ctx.receive();
    for (auto& h : pending) h(ctx.index(), msgs);
    if (work) work(ctx);
  });
  if (on_delivery) pending_.push_back(std::move(on_delivery));
}

void Pipeline::then(Local local) {
  pending_.push_back([f = std::move(local)](VpIndex r, std::vector<Message>&) { f(r); });
}

void Pipeline::finish() {
  auto pending = std::move(pending_);
  pending_.clear();
  m_.finalize([&](VpContext& ctx) {
    auto msgs = ctx.receive();
    for (auto& h : pending) h(ctx.index(), msgs);
  });
}

}  // namespace netobliv
