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


#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "netobliv/common.hpp"
#include "sweep.hpp"

namespace cli = netobliv::cli;

int main(int argc, char** argv) {
  CLI::App app{"Network-oblivious algorithm simulator and sweep runner"};
  app.require_subcommand(1);
  std::string config;
  std::string out;
  bool check_only = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "Sweep configuration (JSON)")->required();
    sub->add_option("--out", out, "Output directory; overrides the config");
    sub->add_flag("--check-only", check_only, "Run correctness oracles without metrics");
  };
  auto* run = app.add_subcommand("run", "Run a sweep and write CSV and JSON reports");
  auto* verify = app.add_subcommand("verify", "Check structural and cost properties");
  auto* gap = app.add_subcommand("gap", "Tabulate the broadcast slowdown against the aware algorithm");
  for (auto* sub : {run, verify, gap}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }

  try {
    cli::SweepConfig cfg = cli::load_config(config);
    if (!out.empty()) cfg.out = out;
    if (run->parsed()) return cli::cmd_run(cfg, check_only, std::cout);
    if (verify->parsed()) return cli::cmd_verify(cfg, std::cout);
    return cli::cmd_gap(cfg, std::cout);
  } catch (const cli::ConfigError& e) {
    std::cerr << "netobliv: " << e.what() << '\n';
    return cli::kUsage;
  } catch (const netobliv::PreconditionError& e) {
    std::cerr << "netobliv: " << e.what() << '\n';
    return cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "netobliv: " << e.what() << '\n';
    return cli::kFailure;
  }
}
