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

#include "netobliv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netobliv {

namespace {

std::size_t slots_for(std::uint64_t p) { return std::max(1u, ilog2(p)); }

Rational sum_below(const std::vector<std::uint64_t>& v, std::size_t j) {
  Rational s{0};
  for (std::size_t i = 0; i < j && i < v.size(); ++i) s += static_cast<std::int64_t>(v[i]);
  return s;
}

// Minimum over 1 <= j <= log p of num_j / den_j, skipping zero denominators.
template <class Den>
std::optional<Rational> min_ratio(const Trace& trace, std::uint64_t p, Den den) {
  require_pow2(p, "p");
  if (p > trace.v) throw PreconditionError("p exceeds v");
  const auto profiles = all_degree_profiles(trace);
  const unsigned logp = ilog2(p);
  std::optional<Rational> best;
  for (unsigned j = 1; j <= logp; ++j) {
    const Rational num = sum_below(profiles[j].F, j);
    const Rational d = Rational(static_cast<std::int64_t>(p >> j)) * den(profiles, j);
    if (d == Rational(0)) continue;
    const Rational r = num / d;
    if (!best || r < *best) best = r;
  }
  return best;
}

}  // namespace

bool DbspParams::preconditions_hold() const {
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    if (g[i] < g[i + 1]) return false;
    if (l[i] / g[i] < l[i + 1] / g[i + 1]) return false;
  }
  return true;
}

DbspParams DbspParams::flat(std::uint64_t p, Rational g, Rational l) {
  require_pow2(p, "p");
  DbspParams d;
  d.p = p;
  d.g.assign(slots_for(p), g);
  d.l.assign(slots_for(p), l);
  return d;
}

DbspParams DbspParams::geometric(std::uint64_t p, Rational ratio, Rational g0, Rational l0) {
  require_pow2(p, "p");
  if (ratio <= Rational(0)) throw PreconditionError("geometric ratio must be positive");
  DbspParams d;
  d.p = p;
  Rational gi = g0, li = l0;
  for (std::size_t i = 0; i < slots_for(p); ++i) {
    d.g.push_back(gi);
    d.l.push_back(li);
    gi /= ratio;
    li /= ratio;
  }
  return d;
}

DbspParams DbspParams::bsp(std::uint64_t p, Rational sigma) { return flat(p, 1, sigma); }

Rational comm_complexity(const DegreeProfile& profile, const EvalParams& params) {
  if (profile.p != params.p) throw PreconditionError("profile/params p mismatch");
  Rational h{0};
  for (std::size_t i = 0; i < profile.slots(); ++i) {
    h += Rational(static_cast<std::int64_t>(profile.F[i])) +
         Rational(static_cast<std::int64_t>(profile.S[i])) * params.sigma;
  }
  return h;
}

Rational comm_time(const DegreeProfile& profile, const DbspParams& params) {
  if (profile.p != params.p) throw PreconditionError("profile/params p mismatch");
  if (params.g.size() < profile.slots() || params.l.size() < profile.slots()) {
    throw PreconditionError("g/l vectors shorter than log p");
  }
  Rational d{0};
  for (std::size_t i = 0; i < profile.slots(); ++i) {
    d += Rational(static_cast<std::int64_t>(profile.F[i])) * params.g[i] +
         Rational(static_cast<std::int64_t>(profile.S[i])) * params.l[i];
  }
  return d;
}

Rational estimate_wiseness(const Trace& trace, std::uint64_t p) {
  const std::uint64_t logp = ilog2(p);
  auto r = min_ratio(trace, p, [&](const std::vector<DegreeProfile>& pr, unsigned j) {
    return sum_below(pr[logp].F, j);
  });
  if (!r) throw MetricUndefined("wiseness undefined: no communication at p=" + std::to_string(p));
  return *r;
}

Rational estimate_fullness(const Trace& trace, std::uint64_t p) {
  if (p > 1 && p <= trace.v) {
    const auto f = degree_profile(trace, p).F;
    if (std::all_of(f.begin(), f.end(), [](std::uint64_t x) { return x == 0; })) {
      throw MetricUndefined("fullness undefined: no communication at p=" + std::to_string(p));
    }
  }
  auto r = min_ratio(trace, p, [&](const std::vector<DegreeProfile>& pr, unsigned j) {
    return sum_below(pr.back().S, j);
  });
  if (!r) throw MetricUndefined("fullness undefined: no supersteps below log p");
  return *r;
}

bool check_lemma1(const Trace& trace, std::uint64_t p) {
  require_pow2(p, "p");
  if (p > trace.v) throw PreconditionError("p exceeds v");
  return check_lemma1(all_degree_profiles(trace), p);
}

bool check_lemma1(const std::vector<DegreeProfile>& profiles, std::uint64_t p) {
  require_pow2(p, "p");
  const unsigned logp = ilog2(p);
  if (profiles.size() <= logp) throw PreconditionError("profiles do not reach p");
  for (unsigned j = 1; j <= logp; ++j) {
    const Rational lhs = sum_below(profiles[j].F, j);
    const Rational rhs = Rational(static_cast<std::int64_t>(p >> j)) * sum_below(profiles[logp].F, j);
    if (lhs > rhs) return false;
  }
  return true;
}

MetricsReport make_report(const Trace& trace, const EvalParams& eval,
                          const std::optional<DbspParams>& dbsp) {
  MetricsReport rep;
  rep.n = trace.n;
  rep.profile = degree_profile(trace, eval.p);
  rep.H = comm_complexity(rep.profile, eval);
  rep.D = dbsp ? comm_time(rep.profile, *dbsp) : comm_time(rep.profile, DbspParams::bsp(eval.p, eval.sigma));
  try {
    rep.alpha = estimate_wiseness(trace, eval.p);
  } catch (const MetricUndefined&) {
  }
  try {
    rep.gamma = estimate_fullness(trace, eval.p);
  } catch (const MetricUndefined&) {
  }
  return rep;
}

Dominance check_dominance(const std::vector<Rational>& X, const std::vector<Rational>& Y,
                          const std::vector<Rational>& f) {
  if (X.size() != Y.size() || X.size() != f.size()) {
    throw PreconditionError("dominance sequences must have equal length");
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < Rational(0)) throw PreconditionError("f must be non-negative");
    if (i + 1 < f.size() && f[i + 1] > f[i]) throw PreconditionError("f must be non-increasing");
  }
  Rational px{0}, py{0};
  for (std::size_t k = 0; k < X.size(); ++k) {
    px += X[k];
    py += Y[k];
    if (px > py) return Dominance::NotApplicable;
  }
  Rational lhs{0}, rhs{0};
  for (std::size_t i = 0; i < X.size(); ++i) {
    lhs += X[i] * f[i];
    rhs += Y[i] * f[i];
  }
  return lhs <= rhs ? Dominance::Holds : Dominance::Violated;
}

Theorem1Check check_theorem1_preconditions(const DbspParams& params, const SigmaRange& range) {
  Theorem1Check out;
  out.factor = [](double alpha, double beta) { return alpha * beta / (1.0 + alpha); };
  const std::size_t logp = slots_for(params.p);
  out.g_monotone = true;
  out.ratio_monotone = true;
  for (std::size_t i = 0; i + 1 < logp; ++i) {
    if (params.g.at(i) < params.g.at(i + 1)) out.g_monotone = false;
    if (params.l.at(i) / params.g.at(i) < params.l.at(i + 1) / params.g.at(i + 1)) {
      out.ratio_monotone = false;
    }
  }
  if (range.lo.size() < logp || range.hi.size() < logp) {
    throw PreconditionError("sigma range shorter than log p");
  }
  out.lower = 0;
  out.upper = std::numeric_limits<double>::infinity();
  const double p = static_cast<double>(params.p);
  for (std::size_t k = 1; k <= logp; ++k) {
    const double scale = std::ldexp(1.0, static_cast<int>(k)) / p;
    out.lower = std::max(out.lower, range.lo[k - 1] * scale);
    out.upper = std::min(out.upper, range.hi[k - 1] * scale);
  }
  out.range_nonempty = out.lower <= out.upper;
  out.ratios_in_range = true;
  for (std::size_t i = 0; i < logp; ++i) {
    const double r = to_double(params.l.at(i) / params.g.at(i));
    if (r < out.lower || r > out.upper) out.ratios_in_range = false;
  }
  out.ok = out.g_monotone && out.ratio_monotone && out.range_nonempty && out.ratios_in_range;
  return out;
}

Rational optimality_ratio(const MetricsReport& candidate, const MetricsReport& baseline,
                          CostKind kind) {
  const Rational c = kind == CostKind::H ? candidate.H : candidate.D;
  const Rational b = kind == CostKind::H ? baseline.H : baseline.D;
  if (c == Rational(0)) throw PreconditionError("candidate cost is zero");
  return b / c;
}

}  // namespace netobliv
