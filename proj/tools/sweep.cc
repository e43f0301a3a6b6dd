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


#include "sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <regex>
#include <tuple>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "netobliv/algorithms/broadcast.hpp"
#include "netobliv/algorithms/registry.hpp"
#include "netobliv/folding.hpp"
#include "netobliv/instances.hpp"
#include "netobliv/machine.hpp"
#include "netobliv/protocol.hpp"
#include "netobliv/trace_io.hpp"

namespace netobliv::cli {

using nlohmann::json;

namespace {

constexpr std::int64_t kRationalDenominator = std::int64_t{1} << 20;

std::string fmt_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return fmt::format("{:.12g}", to_double(r));
}

std::string fmt_opt(const std::optional<Rational>& r) { return r ? fmt_rational(*r) : std::string(); }

std::vector<Rational> rationals(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError(std::string(what) + " entries must be numbers");
    out.push_back(to_rational(x.get<double>()));
  }
  return out;
}

std::vector<double> levels(const json& j, std::size_t count, double fallback, const char* what) {
  if (j.is_null()) return std::vector<double>(count, fallback);
  if (j.is_number()) return std::vector<double>(count, j.get<double>());
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be a number or an array");
  auto v = j.get<std::vector<double>>();
  if (v.size() < count) throw ConfigError(std::string(what) + " shorter than log p");
  return v;
}

std::uint64_t instance_seed(std::uint64_t base, std::uint64_t n, std::uint64_t i) {
  return base ^ (n * 0x9e3779b97f4a7c15ULL) ^ (i * 0xc2b2ae3d27d4eb4fULL);
}

std::uint64_t base_seed(const SweepConfig& cfg) { return cfg.seed ? *cfg.seed : seed_from_env(); }

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::uint64_t max_p(const SweepConfig& cfg) {
  return cfg.p.empty() ? 1 : *std::max_element(cfg.p.begin(), cfg.p.end());
}

void validate(const SweepConfig& cfg, const AlgoEntry* entry) {
  if (cfg.p.empty()) throw ConfigError("p list is empty");
  for (auto p : cfg.p) {
    if (!is_pow2(p)) throw ConfigError(fmt::format("p = {} is not a power of two", p));
  }
  for (double s : cfg.sigma) {
    if (!(s >= 0) || !std::isfinite(s)) throw ConfigError("sigma grid must be finite and non-negative");
  }
  const unsigned logp = ilog2(max_p(cfg));
  for (const auto& pr : cfg.presets) {
    if (pr.kind == Preset::Kind::Custom && (pr.g.size() < logp || pr.l.size() < logp)) {
      throw ConfigError("custom preset '" + pr.name + "' has fewer than log p entries");
    }
  }
  if (!entry) return;
  if (cfg.n.empty()) throw ConfigError("n list is empty");
  for (auto n : cfg.n) {
    std::uint64_t v = 0;
    try {
      v = entry->vp_count(n);
    } catch (const ModelError& e) {
      throw ConfigError(fmt::format("n = {} is invalid for {}: {}", n, entry->id, e.what()));
    }
    for (auto p : cfg.p) {
      if (p > v) throw ConfigError(fmt::format("p = {} exceeds v({}) = {}", p, n, v));
    }
  }
}

template <class F>
std::optional<Rational> maybe(F&& f) {
  try {
    return f();
  } catch (const ModelError&) {
    return std::nullopt;
  }
}

const char* protocol_name(ProtocolMode m) { return m == ProtocolMode::Novel ? "novel" : "standard"; }

std::ofstream open_out(const std::string& dir, const std::string& file) {
  std::filesystem::create_directories(dir);
  std::ofstream os(std::filesystem::path(dir) / file);
  if (!os) throw ConfigError("cannot write " + (std::filesystem::path(dir) / file).string());
  return os;
}

struct Verdicts {
  std::ostream& log;
  bool failed = false;

  void check(bool ok, const std::string& what, const std::string& detail = {}) {
    log << (ok ? "PASS " : "FAIL ") << what;
    if (!detail.empty()) log << "  " << detail;
    log << '\n';
    failed = failed || !ok;
  }
  void info(const std::string& what, const std::string& detail) { log << "INFO " << what << "  " << detail << '\n'; }
};

}  // namespace

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw ConfigError("expected a finite number");
  return Rational(static_cast<std::int64_t>(std::llround(x * static_cast<double>(kRationalDenominator))),
                  kRationalDenominator);
}

DbspParams Preset::params(std::uint64_t p, const Rational& sigma) const {
  switch (kind) {
    case Kind::Flat:
      return DbspParams::flat(p, 1, sigma);
    case Kind::Geometric:
      return DbspParams::geometric(p, ratio, 1, sigma);
    case Kind::Custom: {
      DbspParams d = DbspParams::flat(p);
      for (std::size_t i = 0; i < d.g.size(); ++i) {
        d.g[i] = g.at(i);
        d.l[i] = l.at(i);
      }
      return d;
    }
  }
  throw ConfigError("unknown preset kind");
}

Preset parse_preset(const json& j) {
  Preset pr;
  if (j.is_string()) {
    pr.name = j.get<std::string>();
    static const std::regex geo(R"(geometric\(\s*([0-9]*\.?[0-9]+)\s*\))");
    std::smatch m;
    if (pr.name == "flat") {
      pr.kind = Preset::Kind::Flat;
    } else if (std::regex_match(pr.name, m, geo)) {
      pr.kind = Preset::Kind::Geometric;
      pr.ratio = to_rational(std::stod(m[1].str()));
      if (pr.ratio <= Rational(0)) throw ConfigError("geometric ratio must be positive");
    } else {
      throw ConfigError("unknown preset '" + pr.name + "'");
    }
    return pr;
  }
  if (!j.is_object()) throw ConfigError("preset must be a string or an object");
  pr.kind = Preset::Kind::Custom;
  pr.name = j.value("name", std::string("custom"));
  if (!j.contains("g") || !j.contains("l")) throw ConfigError("custom preset needs g and l");
  pr.g = rationals(j.at("g"), "g");
  pr.l = rationals(j.at("l"), "l");
  for (const auto& g : pr.g) {
    if (g <= Rational(0)) throw ConfigError("custom preset g entries must be positive");
  }
  return pr;
}

SweepConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SweepConfig c;
  try {
    c.algorithm = j.value("algorithm", std::string());
    if (j.contains("n")) c.n = j.at("n").get<std::vector<std::uint64_t>>();
    if (j.contains("p")) c.p = j.at("p").get<std::vector<std::uint64_t>>();
    if (j.contains("sigma")) c.sigma = j.at("sigma").get<std::vector<double>>();
    if (j.contains("presets")) {
      for (const auto& pj : j.at("presets")) c.presets.push_back(parse_preset(pj));
    }
    if (c.presets.empty()) c.presets.push_back(parse_preset("flat"));
    c.dummies = j.value("dummies", true);
    const auto proto = j.value("protocol", std::string("standard"));
    if (proto == "standard") {
      c.protocol = ProtocolMode::Standard;
    } else if (proto == "novel") {
      c.protocol = ProtocolMode::Novel;
    } else {
      throw ConfigError("protocol must be 'standard' or 'novel'");
    }
    c.out = j.value("out", std::string("."));
    c.instances = j.value("instances", std::uint64_t{1});
    if (c.instances == 0) throw ConfigError("instances must be positive");
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("min_alpha")) c.min_alpha = j.at("min_alpha").get<double>();
    if (j.contains("trace")) c.trace_file = j.at("trace").get<std::string>();
    const std::size_t logp = std::max(1u, ilog2(max_p(c)));
    const json range = j.value("sigma_range", json::object());
    c.range.lo = levels(range.value("lo", json()), logp, 0.0, "sigma_range.lo");
    c.range.hi = levels(range.value("hi", json()), logp, std::numeric_limits<double>::infinity(), "sigma_range.hi");
    if (j.contains("gap")) {
      const auto& g = j.at("gap");
      GapConfig gc;
      gc.p = g.at("p").get<std::uint64_t>();
      gc.sigma1 = g.value("sigma1", 0.0);
      gc.sigma2 = g.at("sigma2").get<double>();
      gc.grid = g.value("grid", std::vector<double>{});
      if (gc.grid.empty()) {
        for (double s = 0; s <= gc.sigma2; s = s == 0 ? 1 : 2 * s) gc.grid.push_back(s);
        if (gc.grid.back() != gc.sigma2) gc.grid.push_back(gc.sigma2);
      }
      c.gap = gc;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

void sort_rows(std::vector<Row>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.algo, a.n, a.p, a.sigma, a.preset, a.protocol) <
           std::tie(b.algo, b.n, b.p, b.sigma, b.preset, b.protocol);
  });
}

void write_csv(std::ostream& os, const std::vector<Row>& rows) {
  os << "algo,n,p,sigma,preset,H,D,alpha,gamma,bound_ratio,protocol\n";
  for (const auto& r : rows) {
    fmt::print(os, "{},{},{},{:.12g},{},{},{},{},{},{},{}\n", r.algo, r.n, r.p, r.sigma, r.preset,
               fmt_rational(r.H), fmt_rational(r.D), fmt_opt(r.alpha), fmt_opt(r.gamma),
               r.bound_ratio ? fmt::format("{:.6g}", *r.bound_ratio) : std::string(), r.protocol);
  }
}

json rows_to_json(const std::vector<Row>& rows) {
  json out = json::array();
  auto exact = [](const Rational& r) { return fmt::format("{}/{}", r.numerator(), r.denominator()); };
  for (const auto& r : rows) {
    json j = {{"algo", r.algo}, {"n", r.n}, {"p", r.p}, {"sigma", r.sigma}, {"preset", r.preset},
              {"H", exact(r.H)}, {"D", exact(r.D)}, {"protocol", r.protocol}};
    j["alpha"] = r.alpha ? json(exact(*r.alpha)) : json();
    j["gamma"] = r.gamma ? json(exact(*r.gamma)) : json();
    j["bound_ratio"] = r.bound_ratio ? json(*r.bound_ratio) : json();
    out.push_back(std::move(j));
  }
  return out;
}

int cmd_run(const SweepConfig& cfg, bool check_only, std::ostream& log) {
  const AlgoEntry& entry = find_algorithm(cfg.algorithm);
  validate(cfg, &entry);
  const AlgoOptions opts{cfg.dummies};
  const std::uint64_t seed = base_seed(cfg);
  bool mismatch = false;
  std::vector<Row> rows;
  for (auto n : cfg.n) {
    Trace base;
    for (std::uint64_t i = 0; i < cfg.instances; ++i) {
      Rng rng(instance_seed(seed, n, i));
      AlgoRun r = entry.run(n, rng, opts, nullptr);
      if (!r.correct) {
        log << fmt::format("oracle mismatch: {} n={} instance={}\n", entry.id, n, i);
        mismatch = true;
      }
      if (i == 0) base = std::move(r.trace);
    }
    if (check_only) continue;
    for (auto p : cfg.p) {
      Trace protocol_trace;
      const Trace* measured = &base;
      if (cfg.protocol == ProtocolMode::Novel) {
        NovelRouter router(p);
        Rng rng(instance_seed(seed, n, 0));
        AlgoRun r = entry.run(n, rng, opts, &router);
        if (!r.correct) {
          log << fmt::format("oracle mismatch: {} n={} p={} under the novel protocol\n", entry.id, n, p);
          mismatch = true;
        }
        protocol_trace = router.take_protocol_trace().trace;
        measured = &protocol_trace;
      }
      const DegreeProfile profile = degree_profile(*measured, p);
      const auto alpha = maybe([&] { return estimate_wiseness(base, p); });
      const auto gamma = maybe([&] { return estimate_fullness(base, p); });
      for (double sigma : cfg.sigma) {
        const Rational s = to_rational(sigma);
        for (const auto& preset : cfg.presets) {
          Row row;
          row.algo = entry.id;
          row.n = n;
          row.p = p;
          row.sigma = sigma;
          row.preset = preset.name;
          row.H = comm_complexity(profile, {p, s});
          row.D = comm_time(profile, preset.params(p, s));
          row.alpha = alpha;
          row.gamma = gamma;
          const double bound = entry.bound(n, p, sigma);
          if (bound > 0) row.bound_ratio = to_double(row.H) / bound;
          row.protocol = protocol_name(cfg.protocol);
          rows.push_back(std::move(row));
        }
      }
    }
  }
  if (!check_only) {
    sort_rows(rows);
    auto csv = open_out(cfg.out, entry.id + ".csv");
    csv << "# generated " << timestamp() << '\n';
    write_csv(csv, rows);
    auto js = open_out(cfg.out, entry.id + ".json");
    js << json{{"algorithm", entry.id}, {"seed", seed}, {"rows", rows_to_json(rows)}}.dump(2) << '\n';
    log << fmt::format("wrote {} rows to {}\n", rows.size(),
                       (std::filesystem::path(cfg.out) / (entry.id + ".csv")).string());
  }
  return mismatch ? kFailure : kOk;
}

int cmd_verify(const SweepConfig& cfg, std::ostream& log) {
  Verdicts v{log};
  if (cfg.trace_file) {
    validate(cfg, nullptr);
    std::ifstream is(*cfg.trace_file);
    if (!is) throw ConfigError("cannot open trace '" + *cfg.trace_file + "'");
    const Trace t = read_trace_jsonl(is);
    v.check(validate_cluster_constraint(t).empty(), "cluster constraint", *cfg.trace_file);
    for (auto p : cfg.p) {
      if (p > t.v) throw ConfigError(fmt::format("p = {} exceeds v = {}", p, t.v));
      const bool ok = check_lemma1(t, p);
      v.check(ok, fmt::format("folding_inequality p={}", p), ok ? "" : "folding inequality violated: simulator bug");
    }
  } else {
    const AlgoEntry& entry = find_algorithm(cfg.algorithm);
    validate(cfg, &entry);
    const AlgoOptions opts{cfg.dummies};
    const std::uint64_t seed = base_seed(cfg);
    for (auto n : cfg.n) {
      const std::string tag = fmt::format("{} n={}", entry.id, n);
      std::vector<AlgoRun> runs;
      for (std::uint64_t i = 0; i < std::max<std::uint64_t>(2, cfg.instances); ++i) {
        Rng rng(instance_seed(seed, n, i));
        runs.push_back(entry.run(n, rng, opts, nullptr));
        v.check(runs.back().correct, fmt::format("oracle {} instance={}", tag, i));
      }
      bool same = true;
      for (std::size_t i = 1; i < runs.size(); ++i) same = same && same_static_profile(runs[0].trace, runs[i].trace);
      v.check(same, "static " + tag);
      v.check(validate_cluster_constraint(runs[0].trace).empty(), "cluster constraint " + tag);
      for (auto p : cfg.p) {
        const Trace& t = runs[0].trace;
        v.check(check_lemma1(t, p), fmt::format("lemma1 {} p={}", tag, p));
        const auto alpha = maybe([&] { return estimate_wiseness(t, p); });
        const auto gamma = maybe([&] { return estimate_fullness(t, p); });
        const std::string est = fmt::format("alpha={} gamma={}", alpha ? fmt_rational(*alpha) : "undefined",
                                            gamma ? fmt_rational(*gamma) : "undefined");
        if (cfg.min_alpha) {
          v.check(alpha && to_double(*alpha) >= *cfg.min_alpha, fmt::format("wiseness {} p={}", tag, p), est);
        } else {
          v.info(fmt::format("estimates {} p={}", tag, p), est);
        }
        if (p < 2) continue;
        NovelRouter router(p);
        Rng rng(instance_seed(seed, n, 0));
        const AlgoRun nr = entry.run(n, rng, opts, &router);
        v.check(nr.correct && nr.digest == runs[0].digest, fmt::format("novel output {} p={}", tag, p));
        const auto rep = check_lemma6(router.protocol_trace(), nr.trace, p);
        v.check(rep.ok, fmt::format("protocol_degrees {} p={}", tag, p),
                rep.ok ? fmt::format("large={}/{:.3g} small={:.3g}/{}", rep.max_large_count, rep.max_large_ratio,
                                     rep.max_small_count_per_logp, rep.max_small_degree)
                       : rep.first_failure);
      }
    }
  }
  for (const auto& preset : cfg.presets) {
    for (auto p : cfg.p) {
      if (p < 2) continue;
      SigmaRange range{std::vector<double>(cfg.range.lo.begin(), cfg.range.lo.begin() + ilog2(p)),
                       std::vector<double>(cfg.range.hi.begin(), cfg.range.hi.begin() + ilog2(p))};
      for (double sigma : cfg.sigma) {
        const auto chk = check_theorem1_preconditions(preset.params(p, to_rational(sigma)), range);
        v.check(chk.ok, fmt::format("optimality_preconditions preset={} p={} sigma={}", preset.name, p, sigma),
                fmt::format("g_monotone={} ratio_monotone={} range=[{:.6g}, {:.6g}]", chk.g_monotone,
                            chk.ratio_monotone, chk.lower, chk.upper));
      }
    }
  }
  return v.failed ? kFailure : kOk;
}

int cmd_gap(const SweepConfig& cfg, std::ostream& log) {
  if (!cfg.gap) throw ConfigError("config has no 'gap' section");
  const GapConfig& g = *cfg.gap;
  if (!is_pow2(g.p) || g.p < 2) throw ConfigError("gap p must be a power of two >= 2");
  if (g.sigma1 > g.sigma2) throw ConfigError("gap requires sigma1 <= sigma2");
  const std::uint64_t n = cfg.n.empty() ? g.p : cfg.n.front();
  if (n < g.p || !is_pow2(n)) throw ConfigError("gap n must be a power of two >= p");
  Rng rng(instance_seed(base_seed(cfg), n, 0));
  const auto inst = random_broadcast_instance(n, rng);
  const Trace obl = broadcast_oblivious(inst).trace;
  const DegreeProfile obl_profile = degree_profile(obl, g.p);
  std::vector<double> grid = g.grid;
  std::sort(grid.begin(), grid.end());
  std::vector<Rational> rgrid;
  for (double s : grid) rgrid.push_back(to_rational(s));
  const Rational s1 = to_rational(g.sigma1);
  auto os = open_out(cfg.out, "gap.csv");
  os << "# generated " << timestamp() << '\n';
  const std::string header = "p,sigma,H_oblivious,H_aware,ratio,gap,lower_bound\n";
  os << header;
  log << header;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < g.sigma1 || grid[i] > g.sigma2) continue;
    const Rational s = rgrid[i];
    const auto aware = broadcast_aware(inst, g.p, s);
    const Rational h_obl = comm_complexity(obl_profile, {g.p, s});
    const Rational h_aware = comm_complexity(degree_profile(aware.trace, g.p), {g.p, s});
    const Rational gap = gap_ratio(obl, g.p, s1, s, rgrid);
    const double m1 = std::max(2.0, g.sigma1), m2 = std::max(2.0, grid[i]);
    const double lower = std::log2(m2) / (std::log2(m1) + std::log2(std::log2(m2)));
    const std::string line = fmt::format("{},{:.12g},{},{},{:.6g},{:.6g},{:.6g}\n", g.p, grid[i], fmt_rational(h_obl),
                                         fmt_rational(h_aware), to_double(h_obl / h_aware), to_double(gap), lower);
    os << line;
    log << line;
  }
  return kOk;
}

}  // namespace netobliv::cli
