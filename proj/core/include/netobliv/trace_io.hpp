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

#include <iosfwd>
#include <string>

#include "netobliv/machine.hpp"

namespace netobliv {

// Line-oriented JSON. The first line is a header {"v":..,"n":..}; each
// following line is {"seq":..,"label":..,"pairs":[[src,dst,dummy],...]}.
void write_trace_jsonl(std::ostream& os, const Trace& trace);
Trace read_trace_jsonl(std::istream& is);

std::string record_to_json_line(const SuperstepRecord& rec);

}  // namespace netobliv
