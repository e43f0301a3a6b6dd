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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "netobliv/algorithms/broadcast.hpp"
#include "netobliv/algorithms/registry.hpp"
#include "netobliv/algorithms/stencil.hpp"
#include "netobliv/folding.hpp"
#include "netobliv/metrics.hpp"
#include "netobliv/oracles.hpp"
#include "netobliv/protocol.hpp"

namespace {

using namespace netobliv;

constexpr int kInstances = 5;
const Rational kMinAlpha(1, 8);
constexpr double kScalingFactor = 2.0;
constexpr double kBroadcastFactor = 4.0;
constexpr int kDominanceInstances = 1000;

struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (ok) detail << why;
    ok = false;
  }
};

bool g_failed = false;

void report(int id, const std::string& name, const Verdict& v, std::string extra = {}) {
  g_failed = g_failed || !v.ok;
  std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << name;
  const std::string d = v.detail.str();
  if (!d.empty()) std::cout << "  [" << d << "]";
  if (!extra.empty()) std::cout << "  (" << extra << ")";
  std::cout << std::endl;
}

double to_d(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

std::uint64_t seed_for(std::uint64_t base, const std::string& id, std::uint64_t n, int i) {
  std::uint64_t h = base ^ 0x9e3779b97f4a7c15ull;
  for (char c : id) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
  return h ^ (n * 0x2545f4914f6cdd1dull) ^ static_cast<std::uint64_t>(i);
}

Rational h_at(const Trace& t, std::uint64_t p, const Rational& sigma = Rational(0)) {
  return comm_complexity(degree_profile(t, p), {p, sigma});
}

struct Shared {
  std::map<std::pair<std::string, std::uint64_t>, Trace> first;  // instance 0 per (algorithm, n)
  Lemma6Report worst;
};

// Criteria 1, 2 and 6 on one (algorithm, n) family of instances.
struct Family {
  std::string id;
  std::uint64_t n = 0;
  std::uint64_t v = 0;
  std::function<AlgoRun(Rng&, Router*)> run;
};

void run_family(const Family& f, std::uint64_t base, Shared& sh, Verdict& c1, Verdict& c2, Verdict& c6) {
  const std::string tag = f.id + " n=" + std::to_string(f.n);
  const std::uint64_t pn = std::min<std::uint64_t>(16, f.v);
  const Trace* ref = nullptr;
  for (int i = 0; i < kInstances; ++i) {
    const auto seed = seed_for(base, f.id, f.n, i);
    Rng rng(seed);
    AlgoRun plain;
    try {
      plain = f.run(rng, nullptr);
    } catch (const std::exception& e) {
      c1.fail(tag + ": " + e.what());
      return;
    }
    if (!plain.correct) c1.fail(tag + " instance " + std::to_string(i) + ": output differs from oracle");
    try {
      if (!validate_cluster_constraint(plain.trace).empty()) c2.fail(tag + ": cluster constraint violated");
      if (ref && !same_static_profile(*ref, plain.trace)) c2.fail(tag + ": trace depends on the input");
      const auto profiles = all_degree_profiles(plain.trace);
      for (std::uint64_t p = 1; p <= plain.trace.v; p *= 2) {
        if (!check_lemma1(profiles, p)) c2.fail(tag + ": lemma 1 fails at p=" + std::to_string(p));
      }
    } catch (const std::exception& e) {
      c2.fail(tag + ": " + e.what());
    }

    Rng rng2(seed);
    NovelRouter router(pn);
    try {
      const auto novel = f.run(rng2, &router);
      if (!novel.correct || novel.digest != plain.digest) c6.fail(tag + ": novel output differs");
      const auto rep = check_lemma6(router.protocol_trace(), novel.trace, pn);
      if (!rep.ok) c6.fail(tag + ": " + rep.first_failure);
      auto& w = sh.worst;
      w.max_large_count = std::max(w.max_large_count, rep.max_large_count);
      w.max_large_ratio = std::max(w.max_large_ratio, rep.max_large_ratio);
      w.max_small_count_per_logp = std::max(w.max_small_count_per_logp, rep.max_small_count_per_logp);
      w.max_small_degree = std::max(w.max_small_degree, rep.max_small_degree);
    } catch (const std::exception& e) {
      c6.fail(tag + " novel: " + e.what());
    }
    if (i == 0) ref = &(sh.first[{f.id, f.n}] = std::move(plain.trace));
  }
}

std::vector<Family> families() {
  std::vector<Family> out;
  for (const auto& e : algorithm_registry()) {
    for (auto n : e.sizes) {
      out.push_back({e.id, n, e.vp_count(n), [&e, n](Rng& rng, Router* r) { return e.run(n, rng, AlgoOptions{}, r); }});
    }
  }
  for (std::uint64_t n : {16, 256, 1024}) {
    for (std::int64_t s : {0, 4, 64}) {
      out.push_back({"broadcast_aware(s=" + std::to_string(s) + ")", n, n, [n, s](Rng& rng, Router* r) {
                       const auto in = random_broadcast_instance(n, rng);
                       auto res = broadcast_aware(in, n, Rational(s), r);
                       const bool ok = res.output == BroadcastOutput(n, in.V[0]);
                       return AlgoRun{std::move(res.trace), ok, checksum(res.output)};
                     }});
    }
  }
  return out;
}

void criterion3(const Shared& sh) {
  Verdict v;
  Rational lowest(1);
  std::string where;
  for (const auto& [key, t] : sh.first) {
    const auto& id = key.first;
    const bool wise_family = id.rfind("matmul", 0) == 0 || id.rfind("fft", 0) == 0 || id == "columnsort";
    if (!wise_family) continue;
    for (std::uint64_t p = 2; p <= t.v; p *= 2) {
      const auto a = estimate_wiseness(t, p);
      if (a < lowest) {
        lowest = a;
        where = id + " n=" + std::to_string(key.second) + " p=" + std::to_string(p);
      }
      if (a < kMinAlpha) v.fail(id + " n=" + std::to_string(key.second) + " p=" + std::to_string(p) + ": alpha below 1/8");
    }
  }
  for (std::uint64_t n : {64, 256, 1024}) {
    const auto t = run(single_sender_spec(), std::vector<std::uint64_t>(n, 1)).trace;
    for (std::uint64_t p = 2; p <= n; p *= 2) {
      if (estimate_wiseness(t, p) > Rational(4, static_cast<std::int64_t>(p))) {
        v.fail("single sender n=" + std::to_string(n) + " p=" + std::to_string(p) + ": alpha above 4/p");
      }
    }
  }
  std::ostringstream ex;
  ex << "min alpha " << lowest << " at " << where << "; single sender alpha <= 4/p";
  report(3, "wiseness", v, ex.str());
}

// Successive processor counts: measured cost ratio against the predicted ratio.
bool pairwise(const std::vector<std::uint64_t>& ps, const std::vector<double>& measured,
              const std::function<double(std::uint64_t)>& theory, std::ostringstream& log) {
  bool ok = true;
  for (std::size_t k = 0; k + 1 < ps.size(); ++k) {
    const double rm = measured[k + 1] / measured[k];
    const double rt = theory(ps[k + 1]) / theory(ps[k]);
    const double q = rm / rt;
    log << (k ? ", " : "") << ps[k] << "->" << ps[k + 1] << ": " << std::setprecision(3) << q;
    if (q > kScalingFactor || q < 1 / kScalingFactor) ok = false;
  }
  return ok;
}

void criterion4(const Shared& sh) {
  const std::uint64_t n = 4096;
  const double nn = static_cast<double>(n);
  Verdict all;
  auto part = [&](const std::string& name, const Verdict& v, const std::string& log) {
    std::cout << "  4" << name << ": " << (v.ok ? "ok" : "out of tolerance") << "  (" << log << ")" << std::endl;
    if (v.ok) return;
    all.detail << (all.ok ? "failing: " : ", ") << name.substr(0, 3);
    all.ok = false;
  };

  {
    const auto& t = sh.first.at({"matmul", n});
    Verdict v;
    std::ostringstream log;
    for (std::uint64_t p : {8, 64}) {
      const double q = to_d(h_at(t, p)) / to_d(h_at(t, 8 * p));
      log << (p == 8 ? "" : ", ") << "H(" << p << ")/H(" << 8 * p << ")=" << std::setprecision(3) << q;
      if (q > 4 * kScalingFactor || q < 4 / kScalingFactor) v.fail("");
    }
    part("(a) matmul scaling vs 4", v, log.str());
  }

  const std::vector<std::uint64_t> ps{4, 16, 64, 256, 1024};
  auto scaled = [&](const Trace& t) {
    std::vector<double> out;
    for (auto p : ps) out.push_back(to_d(h_at(t, p)) * static_cast<double>(p) / nn);
    return out;
  };
  const auto fft_theory = [&](std::uint64_t p) { return std::log2(nn) / std::log2(nn / static_cast<double>(p)); };
  {
    Verdict v;
    std::ostringstream log;
    if (!pairwise(ps, scaled(sh.first.at({"fft", n})), fft_theory, log)) v.fail("");
    part("(b) fft scaling of H p/n vs log n/log(n/p)", v, "measured/theory ratio " + log.str());
  }
  {
    Verdict v;
    std::ostringstream log;
    const double e = std::log(4.0) / std::log(1.5);
    if (!pairwise(ps, scaled(sh.first.at({"columnsort", n})), [&](std::uint64_t p) { return std::pow(fft_theory(p), e); }, log)) {
      v.fail("");
    }
    part("(c) sort scaling of H p/n vs (log n/log(n/p))^log_1.5(4)", v, "measured/theory ratio " + log.str());
  }
  {
    Verdict v;
    std::ostringstream log;
    std::vector<double> norm;
    for (std::uint64_t m : {64, 256, 1024}) {
      const auto key = std::make_pair(std::string("stencil_1d"), m);
      Trace t;
      if (sh.first.count(key)) {
        t = sh.first.at(key);
      } else {
        Rng rng(seed_for(seed_from_env(), "stencil_1d", m, 0));
        const auto inst = random_stencil_instance(1, m, NodeFunction::HashMix, rng);
        t = run(stencil_spec(1), inst).trace;
      }
      const double md = static_cast<double>(m);
      norm.push_back(to_d(h_at(t, m)) / (md * std::pow(4.0, std::sqrt(std::log2(md)))));
      log << (norm.size() > 1 ? ", " : "") << "n=" << m << ": " << std::setprecision(3) << norm.back();
    }
    const double spread = *std::max_element(norm.begin(), norm.end()) / *std::min_element(norm.begin(), norm.end());
    if (spread > kScalingFactor) v.fail("");
    log << "; max/min " << std::setprecision(3) << spread;
    part("(d) stencil_1d H/(n 4^sqrt(log n)) bounded", v, log.str());
  }
  report(4, "scaling laws at sigma=0 within a factor of 2", all);
}

void criterion5() {
  Verdict v;
  double lo = 1e300, hi = 0;
  for (std::uint64_t p : {16, 256, 1024}) {
    Rng rng(seed_for(seed_from_env(), "broadcast_aware", p, 0));
    const auto in = random_broadcast_instance(p, rng);
    for (std::int64_t s : {0, 4, 64, 1024}) {
      const double h = to_d(h_at(broadcast_aware(in, p, Rational(s)).trace, p, Rational(s)));
      const double k = std::max(2.0, static_cast<double>(s));
      const double bound = k * std::log2(static_cast<double>(p)) / std::log2(k);
      const double q = h / bound;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      if (q > kBroadcastFactor || q < 1 / kBroadcastFactor) {
        v.fail("p=" + std::to_string(p) + " sigma=" + std::to_string(s) + ": H/bound out of range");
      }
    }
  }
  const std::uint64_t p = 1024;
  Rng rng(seed_for(seed_from_env(), "broadcast_oblivious", p, 0));
  const auto obl = broadcast_oblivious(random_broadcast_instance(p, rng)).trace;
  std::vector<Rational> grid;
  for (std::int64_t s = 2; s <= static_cast<std::int64_t>(p); s *= 2) grid.push_back(Rational(s));
  Rational prev(0), last(0);
  for (const auto& s2 : grid) {
    last = gap_ratio(obl, p, Rational(2), s2, grid);
    if (last < prev) v.fail("gap ratio decreases at sigma2=" + std::to_string(s2.numerator()));
    prev = last;
  }
  if (!(last > Rational(2))) v.fail("gap ratio at sigma2=p is not above 2");
  std::ostringstream ex;
  ex << "H/bound in [" << std::setprecision(3) << lo << ", " << hi << "]; gap at sigma2=1024: " << to_d(last);
  report(5, "broadcast", v, ex.str());
}

void criterion6_fixture(Verdict& v, std::ostringstream& ex) {
  const auto params = DbspParams::geometric(16, Rational(2), Rational(1));
  const auto res = execute_novel(single_sender_spec(), std::vector<std::uint64_t>(1024, 1), 16, params);
  if (!(res.D < res.standard_D)) v.fail("single sender: novel D not below standard D");
  ex << "; single sender n=1024 p=16: novel D " << to_d(res.D) << " vs " << to_d(res.standard_D);
}

void criterion7() {
  Verdict v;
  Rng rng(seed_from_env());
  std::uniform_int_distribution<int> len(1, 16), val(-50, 50), slack(0, 6), step(0, 6);
  for (int t = 0; t < kDominanceInstances; ++t) {
    const int m = len(rng);
    std::vector<Rational> X, Y, f;
    Rational prev(0), cur(100);
    for (int i = 0; i < m; ++i) {
      const Rational pk(slack(rng), 1 + slack(rng));
      X.emplace_back(val(rng), 1 + slack(rng));
      Y.push_back(X.back() + pk - prev);
      prev = pk;
      f.push_back(cur);
      cur = std::max(Rational(0), cur - Rational(step(rng), 3));
    }
    if (check_dominance(X, Y, f) != Dominance::Holds) v.fail("instance " + std::to_string(t));
  }
  report(7, "dominance", v, std::to_string(kDominanceInstances) + " instances");
}

void criterion8() {
  Verdict v;
  const std::uint64_t n = 4096;
  for (std::uint64_t p : {16, 64, 256}) {
    SigmaRange range;
    for (unsigned i = 0; i < ilog2(p); ++i) {
      range.lo.push_back(0);
      range.hi.push_back(static_cast<double>(n) / ((i + 1) * std::pow(2.0, 2.0 * i / 3.0)));
    }
    const auto d = DbspParams::geometric(p, Rational(2), Rational(1), Rational(static_cast<std::int64_t>(n / p)));
    if (!check_theorem1_preconditions(d, range).ok) v.fail("matmul instantiation rejected at p=" + std::to_string(p));
  }
  DbspParams up;
  up.p = 16;
  up.g = {Rational(1), Rational(2), Rational(4), Rational(8)};
  up.l = std::vector<Rational>(4, Rational(0));
  SigmaRange any{std::vector<double>(4, 0), std::vector<double>(4, INFINITY)};
  if (check_theorem1_preconditions(up, any).ok) v.fail("increasing g accepted");
  report(8, "optimality preconditions", v, "matmul n=4096, p in {16,64,256}; increasing g rejected");
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t base = seed_from_env();
  std::cout << "seed " << base << std::endl;
  Shared sh;
  Verdict c1, c2, c6;
  std::size_t runs = 0;
  for (const auto& f : families()) {
    run_family(f, base, sh, c1, c2, c6);
    runs += kInstances;
  }
  report(1, "correctness", c1, std::to_string(runs) + " runs against the oracles");
  report(2, "static, cluster constraint, folding inequality", c2, "every trace of criterion 1, all p <= v");
  criterion3(sh);
  criterion4(sh);
  criterion5();
  std::ostringstream ex6;
  ex6 << "protocol degree maxima: large count " << sh.worst.max_large_count << ", large ratio " << std::setprecision(3)
      << sh.worst.max_large_ratio << ", small count/log p " << sh.worst.max_small_count_per_logp << ", small degree "
      << sh.worst.max_small_degree;
  criterion6_fixture(c6, ex6);
  report(6, "novel protocol", c6, ex6.str());
  criterion7();
  criterion8();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "elapsed " << std::setprecision(3) << secs << " s" << std::endl;
  return g_failed ? 1 : 0;
}
