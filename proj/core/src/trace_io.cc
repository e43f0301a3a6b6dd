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

#include "netobliv/trace_io.hpp"

#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace netobliv {

using nlohmann::json;

std::string record_to_json_line(const SuperstepRecord& rec) {
  json pairs = json::array();
  for (const Pair& pr : rec.pairs) pairs.push_back({pr.src, pr.dst, pr.dummy ? 1 : 0});
  json j = {{"seq", rec.seq}, {"label", rec.label}, {"pairs", std::move(pairs)}};
  return j.dump();
}

void write_trace_jsonl(std::ostream& os, const Trace& trace) {
  os << json{{"v", trace.v}, {"n", trace.n}}.dump() << '\n';
  for (const auto& rec : trace.records) os << record_to_json_line(rec) << '\n';
}

Trace read_trace_jsonl(std::istream& is) {
  Trace t;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    if (header) {
      t.v = j.at("v").get<std::uint64_t>();
      t.n = j.at("n").get<std::uint64_t>();
      header = false;
      continue;
    }
    SuperstepRecord rec;
    rec.seq = j.at("seq").get<std::uint64_t>();
    rec.label = j.at("label").get<Label>();
    for (const auto& p : j.at("pairs")) {
      rec.pairs.push_back({p.at(0).get<VpIndex>(), p.at(1).get<VpIndex>(), p.at(2).get<int>() != 0});
    }
    t.records.push_back(std::move(rec));
  }
  if (header) throw ModelError("trace stream has no header line");
  return t;
}

}  // namespace netobliv
