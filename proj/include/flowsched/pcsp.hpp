// Copyright 2026 The flowsched Authors
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

// Precedence-constrained scheduling on identical machines.
//
// Time-indexed LP -> half-point completions C_j -> list scheduling in order
// of C_j at speed alpha on half the sizes -> rates doubled (speed 2 alpha)
// -> one machine per job with a speed increase found on a fixed grid.

#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flowsched/delay_cost.hpp"
#include "flowsched/error.hpp"
#include "flowsched/lp.hpp"
#include "flowsched/model.hpp"
#include "flowsched/rational.hpp"

namespace flowsched {

// r_{j'} <- max(r_{j'}, r_j + p_j) over j -> j', in topological order.
inline PcspInstance preprocess(const PcspInstance& inst) {
  validate(inst);
  PcspInstance out = inst;
  const auto pred = inst.predecessors();
  for (int j : topological_order(inst)) {
    for (int a : pred[j]) {
      out.jobs[j].release =
          std::max(out.jobs[j].release, out.jobs[a].release + out.jobs[a].size);
    }
  }
  return out;
}

// Each job of size p > 1 becomes a chain of p unit pieces; the last piece
// keeps the cost, the others cost nothing.
struct ChainExpansion {
  PcspInstance instance;
  std::vector<int> first_piece;
  std::vector<int> last_piece;
};

inline ChainExpansion expand_chains(const PcspInstance& inst) {
  validate(inst);
  ChainExpansion ex;
  ex.instance.m = inst.m;
  for (const auto& job : inst.jobs) {
    const int first = ex.instance.n();
    const std::int64_t pieces = std::max<std::int64_t>(1, job.size);
    for (std::int64_t k = 0; k < pieces; ++k) {
      const bool last = k + 1 == pieces;
      ex.instance.jobs.push_back({job.size == 0 ? 0 : 1, job.release,
                                  last ? job.cost : DelayCost::weighted_flow(0, job.release)});
      if (k > 0) ex.instance.edges.emplace_back(ex.instance.n() - 2, ex.instance.n() - 1);
    }
    ex.first_piece.push_back(first);
    ex.last_piece.push_back(ex.instance.n() - 1);
  }
  for (auto [a, b] : inst.edges) ex.instance.edges.emplace_back(ex.last_piece[a], ex.first_piece[b]);
  return ex;
}

inline std::int64_t auto_horizon(const PcspInstance& inst) {
  return inst.max_release() + inst.total_size();
}

// ---------------------------------------------------------------------------
// Time-indexed LP.

struct PcspLp {
  LinearProgram lp;
  std::int64_t horizon = 0;
  std::vector<std::int64_t> first_slot;     // r_j + 1
  std::vector<std::vector<int>> x_var;      // x_var[j][t - first_slot[j]]
  std::vector<int> c_var;
};

// Variables x_{j,t} in [0, 1] for slots t = r_j + 1 .. horizon and c_j >= 0.
//   min  sum_j sum_t x_{j,t} g_j(t) / p_j + sum_j g_j(p_j)
//   sum_t x_{j,t} >= p_j
//   sum_{j: r_j < t} x_{j,t} <= m               for every slot t
//   c_j >= sum_t x_{j,t} (t / p_j + 1/2)
//   c_{j'} >= c_j + p_{j'}                       for j -> j'
// Zero-size jobs get no x variables.
inline PcspLp build_time_indexed_lp(const PcspInstance& inst, std::int64_t horizon) {
  validate(inst);
  PcspLp out;
  out.horizon = horizon;
  auto& lp = out.lp;
  const int n = inst.n();
  Exact constant(0);
  std::vector<std::vector<std::pair<int, Exact>>> slot_rows(std::max<std::int64_t>(horizon, 0) + 1);
  for (int j = 0; j < n; ++j) {
    const auto& job = inst.jobs[j];
    out.first_slot.push_back(job.release + 1);
    out.x_var.emplace_back();
    constant += Exact(job.cost(job.size));
    if (job.size == 0) continue;
    for (std::int64_t t = job.release + 1; t <= horizon; ++t) {
      const int v = lp.add_variable("x_" + std::to_string(j) + "_" + std::to_string(t), Exact(0),
                                    Exact(1), Exact(job.cost(t)) / Exact(job.size));
      out.x_var[j].push_back(v);
      slot_rows[t].emplace_back(v, Exact(1));
    }
  }
  for (int j = 0; j < n; ++j) {
    out.c_var.push_back(lp.add_variable("c_" + std::to_string(j), Exact(0), std::nullopt, Exact(0)));
  }
  lp.set_objective_constant(constant);
  for (int j = 0; j < n; ++j) {
    const auto& job = inst.jobs[j];
    if (job.size == 0) continue;
    LpRow service;
    service.name = "service_" + std::to_string(j);
    service.sense = RowSense::kGe;
    service.rhs = Exact(job.size);
    LpRow cost;
    cost.name = "completion_" + std::to_string(j);
    cost.sense = RowSense::kGe;
    cost.rhs = Exact(0);
    cost.coeffs.emplace_back(out.c_var[j], Exact(1));
    for (std::size_t k = 0; k < out.x_var[j].size(); ++k) {
      const std::int64_t t = out.first_slot[j] + static_cast<std::int64_t>(k);
      service.coeffs.emplace_back(out.x_var[j][k], Exact(1));
      cost.coeffs.emplace_back(out.x_var[j][k],
                               -(Exact(t) / Exact(job.size) + Exact(1, 2)));
    }
    lp.add_row(std::move(service));
    lp.add_row(std::move(cost));
  }
  for (std::int64_t t = 1; t <= horizon; ++t) {
    if (slot_rows[t].empty()) continue;
    LpRow cap;
    cap.name = "capacity_" + std::to_string(t);
    cap.sense = RowSense::kLe;
    cap.rhs = Exact(inst.m);
    cap.coeffs = std::move(slot_rows[t]);
    lp.add_row(std::move(cap));
  }
  for (auto [a, b] : inst.edges) {
    LpRow prec;
    prec.name = "prec_" + std::to_string(a) + "_" + std::to_string(b);
    prec.sense = RowSense::kGe;
    prec.rhs = Exact(inst.jobs[b].size);
    prec.coeffs = {{out.c_var[b], Exact(1)}, {out.c_var[a], Exact(-1)}};
    lp.add_row(std::move(prec));
  }
  return out;
}

struct PcspLpSolution {
  LpSolution raw;
  std::vector<std::vector<double>> x;  // x[j][t - first_slot[j]]
  std::vector<double> c;
  double objective = 0.0;
};

inline PcspLpSolution solve_time_indexed_lp(const PcspLp& model, LpMode mode) {
  PcspLpSolution out;
  out.raw = solve(model.lp, mode);
  if (!out.raw.optimal()) {
    throw Error(ErrorCode::kInfeasibleDeadlines,
                "time-indexed LP is " + std::string(to_string(out.raw.status)) +
                    " for horizon " + std::to_string(model.horizon));
  }
  for (const auto& vars : model.x_var) {
    out.x.emplace_back();
    for (int v : vars) out.x.back().push_back(out.raw.values[v]);
  }
  for (int v : model.c_var) out.c.push_back(out.raw.values[v]);
  out.objective = out.raw.objective;
  return out;
}

// C_j = first slot by which at least p_j / 2 units are processed.
inline std::vector<std::int64_t> extract_halfpoint_completions(const PcspLp& model,
                                                               const PcspLpSolution& sol,
                                                               const PcspInstance& inst) {
  std::vector<std::int64_t> C;
  const bool exact = sol.raw.mode == LpMode::kRational && !sol.raw.exact_values.empty();
  for (int j = 0; j < inst.n(); ++j) {
    const auto& job = inst.jobs[j];
    if (job.size == 0) {
      C.push_back(job.release);
      continue;
    }
    std::int64_t found = model.horizon;
    if (exact) {
      Exact acc(0);
      const Exact half = Exact(job.size) / 2;
      for (std::size_t k = 0; k < model.x_var[j].size(); ++k) {
        acc += sol.raw.exact_values[model.x_var[j][k]];
        if (acc >= half) {
          found = model.first_slot[j] + static_cast<std::int64_t>(k);
          break;
        }
      }
    } else {
      double acc = 0.0;
      const double half = static_cast<double>(job.size) / 2.0;
      for (std::size_t k = 0; k < sol.x[j].size(); ++k) {
        acc += sol.x[j][k];
        if (acc >= half - 1e-9) {
          found = model.first_slot[j] + static_cast<std::int64_t>(k);
          break;
        }
      }
    }
    C.push_back(found);
  }
  return C;
}

// Same rule applied to raw per-slot masses x[k] at slots first + k.
inline std::int64_t halfpoint(std::int64_t size, std::int64_t first,
                              const std::vector<Time>& mass) {
  Time acc(0);
  for (std::size_t k = 0; k < mass.size(); ++k) {
    acc += mass[k];
    if (acc >= Time(size, 2)) return first + static_cast<std::int64_t>(k);
  }
  return first + static_cast<std::int64_t>(mass.size()) - 1;
}

// ---------------------------------------------------------------------------
// Interval property.

struct IntervalWitness {
  Time a;
  Time b;
  Time lhs;
  Time rhs;
};

struct IntervalCheck {
  bool ok = true;
  std::optional<IntervalWitness> witness;
};

inline Time half_size(const PcspJob& job) { return Time(job.size, 2); }

// For all a < b in {r_j, r_j + p'_j, C_j}:
//   sum_{j: C_j <= b, r_j + p'_j > a} min(p'_j, r_j + p'_j - a) <= 2 m (b - a).
inline IntervalCheck check_interval_property(const PcspInstance& inst,
                                             const std::vector<std::int64_t>& C) {
  if (C.size() != inst.jobs.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "completion vector has wrong length");
  }
  std::set<Time> ev;
  for (std::size_t j = 0; j < C.size(); ++j) {
    const auto& job = inst.jobs[j];
    ev.insert(Time(job.release));
    ev.insert(Time(job.release) + half_size(job));
    ev.insert(Time(C[j]));
  }
  const std::vector<Time> pts(ev.begin(), ev.end());
  for (std::size_t ia = 0; ia < pts.size(); ++ia) {
    for (std::size_t ib = ia + 1; ib < pts.size(); ++ib) {
      const Time& a = pts[ia];
      const Time& b = pts[ib];
      Time lhs(0);
      for (std::size_t j = 0; j < C.size(); ++j) {
        const auto& job = inst.jobs[j];
        const Time end = Time(job.release) + half_size(job);
        if (Time(C[j]) <= b && end > a) lhs += std::min(half_size(job), end - a);
      }
      const Time rhs = Time(2 * inst.m) * (b - a);
      if (lhs > rhs) return {false, IntervalWitness{a, b, lhs, rhs}};
    }
  }
  return {};
}

// Kahn's algorithm taking the ready job of smallest (C_j, j).
inline std::vector<int> priority_order(const PcspInstance& inst,
                                       const std::vector<std::int64_t>& C) {
  const int n = inst.n();
  const auto succ = inst.successors();
  std::vector<int> indeg(n, 0);
  for (int j = 0; j < n; ++j) {
    for (int k : succ[j]) ++indeg[k];
  }
  std::set<std::pair<std::int64_t, int>> ready;
  for (int j = 0; j < n; ++j) {
    if (indeg[j] == 0) ready.emplace(C[j], j);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    const int j = ready.begin()->second;
    ready.erase(ready.begin());
    order.push_back(j);
    for (int k : succ[j]) {
      if (--indeg[k] == 0) ready.emplace(C[k], k);
    }
  }
  if (static_cast<int>(order.size()) != n) {
    throw Error(ErrorCode::kCycleDetected, "precedence relation contains a cycle");
  }
  return order;
}

// ---------------------------------------------------------------------------
// List scheduling.

struct ListResult {
  MigratorySchedule schedule;  // processes amount[j] of job j at rate alpha
  std::vector<Time> amount;
  std::map<Time, int> capacity;  // c(t) = capacity[k] on (k, next key]
};

// Processing time per unit is 1/alpha. A job enters machine c(t) of every
// non-full piece of its window, so the machine index grows with the order.
inline ListResult list_schedule(const PcspInstance& inst, const std::vector<int>& order,
                                const Time& alpha, const std::vector<Time>& amount) {
  if (alpha <= Time(0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  const int n = inst.n();
  if (static_cast<int>(order.size()) != n || static_cast<int>(amount.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "order or amount has wrong length");
  }
  const auto pred = inst.predecessors();
  ListResult res;
  res.amount = amount;
  auto& cap = res.capacity;
  cap[Time(0)] = 0;
  auto split = [&](const Time& t) {
    auto it = cap.lower_bound(t);
    if (it != cap.end() && it->first == t) return it;
    const int v = std::prev(it)->second;
    return cap.emplace_hint(it, t, v);
  };
  auto& s = res.schedule;
  s.speed = alpha;
  s.start.assign(n, Time(0));
  s.completion.assign(n, Time(0));
  std::vector<bool> placed(n, false);
  for (int j : order) {
    Time start(inst.jobs[j].release);
    for (int a : pred[j]) {
      if (!placed[a]) throw Error(ErrorCode::kInvalidArgument, "order violates precedence");
      start = std::max(start, s.completion[a]);
    }
    s.start[j] = start;
    Time need = amount[j] / alpha;
    Time t = start;
    auto it = split(start);
    while (need > Time(0)) {
      auto nx = std::next(it);
      if (it->second < inst.m) {
        if (nx == cap.end() || nx->first - it->first > need) {
          nx = split(it->first + need);
        }
        const Time len = nx->first - it->first;
        const int machine = it->second;
        if (!s.segments.empty() && s.segments.back().job == j &&
            s.segments.back().machine == machine && s.segments.back().to == it->first) {
          s.segments.back().to = nx->first;
        } else {
          s.segments.push_back({j, machine, it->first, nx->first, alpha});
        }
        ++it->second;
        need -= len;
        t = nx->first;
      }
      it = nx;
    }
    s.completion[j] = t;
    placed[j] = true;
  }
  // Fold breakpoints whose neighbours carry the same value.
  for (auto it = std::next(cap.begin()); it != cap.end();) {
    if (std::prev(it)->second == it->second) {
      it = cap.erase(it);
    } else {
      ++it;
    }
  }
  return res;
}

inline int capacity_at(const std::map<Time, int>& cap, const Time& t) {
  // value on (k, next] containing t, for t > 0
  auto it = cap.lower_bound(t);
  if (it == cap.begin()) return cap.empty() ? 0 : it->second;
  return std::prev(it)->second;
}

// Sampled quantities used by the monotonicity and idle-volume checks.
struct ListTrace {
  std::vector<Time> events;
  std::vector<Time> f_at;     // f(e)
  std::vector<Time> f_right;  // lim f(t) for t -> e from above
  std::vector<std::pair<Time, Time>> fresh;  // closed intervals, merged, sorted
  struct Gap {
    Time a;
    Time b;
    Time idle;
  };
  std::vector<Gap> gaps;

  bool f_monotone() const {
    Time last(0);
    bool first = true;
    for (std::size_t k = 0; k < events.size(); ++k) {
      for (const Time& v : {f_at[k], f_right[k]}) {
        if (!first && v < last) return false;
        last = v;
        first = false;
      }
    }
    return true;
  }
};

inline ListTrace trace_list_schedule(const PcspInstance& inst, const ListResult& lr,
                                     const Time& alpha) {
  const auto& s = lr.schedule;
  const int n = inst.n();
  std::set<Time> ev{Time(0)};
  for (int j = 0; j < n; ++j) {
    ev.insert(s.start[j]);
    ev.insert(s.completion[j]);
  }
  for (const auto& seg : s.segments) {
    ev.insert(seg.from);
    ev.insert(seg.to);
  }
  for (const auto& [k, v] : lr.capacity) ev.insert(k);
  ListTrace tr;
  tr.events.assign(ev.begin(), ev.end());

  auto processed = [&](int j, const Time& t) {
    Time p(0);
    for (const auto& seg : s.segments) {
      if (seg.job != j || seg.from >= t) continue;
      p += seg.rate * (std::min(seg.to, t) - seg.from);
    }
    return p;
  };
  auto running = [&](int j, const Time& u, const Time& v) {
    for (const auto& seg : s.segments) {
      if (seg.job == j && seg.from <= u && v <= seg.to) return true;
    }
    return false;
  };
  // f at e (R = {S < e <= C}) and its right limit (R = {S <= e < C}).
  auto f_point = [&](const Time& e, bool right) {
    Time f = e;
    for (int j = 0; j < n; ++j) {
      const bool in = right ? (s.start[j] <= e && e < s.completion[j])
                            : (s.start[j] < e && e <= s.completion[j]);
      if (in) f = std::min(f, Time(inst.jobs[j].release) + processed(j, e));
    }
    return f;
  };
  std::vector<std::pair<Time, Time>> fresh;
  for (std::size_t k = 0; k < tr.events.size(); ++k) {
    const Time& e = tr.events[k];
    tr.f_at.push_back(f_point(e, false));
    tr.f_right.push_back(f_point(e, true));
    if (tr.f_at.back() == e) fresh.emplace_back(e, e);
    if (k + 1 == tr.events.size()) break;
    // Inside (u, v) every ready job moves at slope alpha or 0.
    const Time u = e, v = tr.events[k + 1];
    Time lo = u, hi = v;
    for (int j = 0; j < n; ++j) {
      if (!(s.start[j] <= u && v <= s.completion[j])) continue;
      const Time val = Time(inst.jobs[j].release) + processed(j, u);
      if (running(j, u, v)) {
        if (val >= u) continue;
        if (alpha <= Time(1)) {
          lo = v;
          hi = u;
          break;
        }
        lo = std::max(lo, u + (u - val) / (alpha - Time(1)));
      } else {
        hi = std::min(hi, val);
      }
    }
    if (lo < hi) fresh.emplace_back(lo, hi);
  }
  std::sort(fresh.begin(), fresh.end());
  for (const auto& iv : fresh) {
    if (!tr.fresh.empty() && iv.first <= tr.fresh.back().second) {
      tr.fresh.back().second = std::max(tr.fresh.back().second, iv.second);
    } else {
      tr.fresh.push_back(iv);
    }
  }
  auto idle_between = [&](const Time& a, const Time& b) {
    Time idle(0);
    for (std::size_t k = 0; k + 1 < tr.events.size(); ++k) {
      const Time u = std::max(a, tr.events[k]);
      const Time v = std::min(b, tr.events[k + 1]);
      if (!(u < v)) continue;
      if (capacity_at(lr.capacity, (u + v) / Time(2)) < inst.m) idle += v - u;
    }
    return idle;
  };
  for (std::size_t k = 0; k + 1 < tr.fresh.size(); ++k) {
    const Time a = tr.fresh[k].second, b = tr.fresh[k + 1].first;
    tr.gaps.push_back({a, b, idle_between(a, b)});
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Migratory schedule.

struct MigratoryResult {
  PcspInstance preprocessed;
  PcspLp lp;
  PcspLpSolution lp_solution;
  std::vector<std::int64_t> C;  // half-point completions
  IntervalCheck property;
  std::vector<int> order;
  ListResult list;               // on p' = p / 2 at speed alpha
  MigratorySchedule schedule;    // full sizes at speed 2 alpha
};

struct PcspOptions {
  Time alpha{3};
  std::optional<std::int64_t> horizon;  // default: max r + sum p after preprocessing
  std::optional<LpMode> mode;           // default: rational for n <= 8
  bool expand_chains = false;
};

inline MigratoryResult migratory_schedule(const PcspInstance& inst, const PcspOptions& opts = {}) {
  MigratoryResult res;
  res.preprocessed = preprocess(inst);
  const auto& pi = res.preprocessed;
  const std::int64_t H = opts.horizon.value_or(auto_horizon(pi));
  res.lp = build_time_indexed_lp(pi, H);
  res.lp_solution =
      solve_time_indexed_lp(res.lp, opts.mode.value_or(pi.n() <= 8 ? LpMode::kRational : LpMode::kFloat));
  res.C = extract_halfpoint_completions(res.lp, res.lp_solution, pi);
  res.property = check_interval_property(pi, res.C);
  res.order = priority_order(pi, res.C);
  std::vector<Time> half;
  for (const auto& job : pi.jobs) half.push_back(half_size(job));
  res.list = list_schedule(pi, res.order, opts.alpha, half);
  res.schedule = res.list.schedule;
  res.schedule.speed = opts.alpha * Time(2);
  for (auto& seg : res.schedule.segments) seg.rate = res.schedule.speed;
  return res;
}

// ---------------------------------------------------------------------------
// Non-migratory conversion.

struct NonMigratoryResult {
  MigratorySchedule schedule;
  Time factor{1};          // speed increase over the input
  Time achieved_speed{1};  // input speed times factor
  std::vector<int> machine_of;
};

namespace pcsp_detail {

struct EdfJob {
  int job;
  Time release;
  Time deadline;
  Time work;
};

// Preemptive EDF on one machine at `rate`; nullopt when a deadline is missed.
inline std::optional<std::vector<MigSegment>> edf_single(std::vector<EdfJob> jobs, int machine,
                                                         const Time& rate,
                                                         std::vector<Time>& finish) {
  std::sort(jobs.begin(), jobs.end(), [](const EdfJob& a, const EdfJob& b) {
    return a.release != b.release ? a.release < b.release : a.job < b.job;
  });
  std::vector<MigSegment> segs;
  std::vector<Time> left;
  for (const auto& j : jobs) left.push_back(j.work);
  std::vector<int> pending;
  std::size_t next = 0;
  Time t(0);
  while (true) {
    while (next < jobs.size() && jobs[next].release <= t) pending.push_back(static_cast<int>(next++));
    if (pending.empty()) {
      if (next == jobs.size()) break;
      t = jobs[next].release;
      continue;
    }
    auto best = std::min_element(pending.begin(), pending.end(), [&](int a, int b) {
      if (jobs[a].deadline != jobs[b].deadline) return jobs[a].deadline < jobs[b].deadline;
      return jobs[a].job < jobs[b].job;
    });
    const int k = *best;
    Time until = t + left[k] / rate;
    if (next < jobs.size()) until = std::min(until, jobs[next].release);
    if (!segs.empty() && segs.back().job == jobs[k].job && segs.back().to == t) {
      segs.back().to = until;
    } else {
      segs.push_back({jobs[k].job, machine, t, until, rate});
    }
    left[k] -= (until - t) * rate;
    t = until;
    if (left[k] == Time(0)) {
      if (t > jobs[k].deadline) return std::nullopt;
      finish[jobs[k].job] = t;
      pending.erase(best);
    }
  }
  return segs;
}

}  // namespace pcsp_detail

inline std::vector<Time> speed_grid() {
  std::vector<Time> g;
  for (int k = 2; k <= 16; ++k) g.emplace_back(k, 2);
  return g;
}

// Jobs by (start, index) go to the machine whose already assigned jobs
// overlapping the window carry the least work; then EDF per machine within
// the windows at the smallest grid factor that meets every window end.
inline NonMigratoryResult make_nonmigratory(const MigratorySchedule& mig, const PcspInstance& inst) {
  const int n = inst.n();
  NonMigratoryResult res;
  res.machine_of.assign(n, 0);
  if (mig.is_nonmigratory()) {
    res.schedule = mig;
    res.achieved_speed = mig.speed;
    for (const auto& seg : mig.segments) res.machine_of[seg.job] = seg.machine;
    return res;
  }
  std::vector<int> by_start(n);
  for (int j = 0; j < n; ++j) by_start[j] = j;
  std::stable_sort(by_start.begin(), by_start.end(),
                   [&](int a, int b) { return mig.start[a] < mig.start[b]; });
  std::vector<std::vector<int>> on(inst.m);
  for (int j : by_start) {
    if (inst.jobs[j].size == 0) continue;
    int best = 0;
    Time best_load(-1);
    for (int i = 0; i < inst.m; ++i) {
      Time load(0);
      for (int k : on[i]) {
        if (mig.start[k] < mig.completion[j] && mig.start[j] < mig.completion[k]) {
          load += Time(inst.jobs[k].size);
        }
      }
      if (best_load < Time(0) || load < best_load) {
        best = i;
        best_load = load;
      }
    }
    on[best].push_back(j);
    res.machine_of[j] = best;
  }
  const auto order = topological_order(inst);
  const auto pred = inst.predecessors();
  for (const Time& f : speed_grid()) {
    const Time rate = mig.speed * f;
    std::vector<Time> finish(n, Time(0));
    std::vector<MigSegment> all;
    bool ok = true;
    for (int i = 0; i < inst.m && ok; ++i) {
      std::vector<pcsp_detail::EdfJob> jobs;
      for (int j : on[i]) {
        jobs.push_back({j, mig.start[j], mig.completion[j], Time(inst.jobs[j].size)});
      }
      auto segs = pcsp_detail::edf_single(jobs, i, rate, finish);
      if (!segs) {
        ok = false;
      } else {
        all.insert(all.end(), segs->begin(), segs->end());
      }
    }
    if (!ok) continue;
    MigratorySchedule out;
    out.speed = rate;
    out.segments = std::move(all);
    out.start = mig.start;
    out.completion = finish;
    for (int j : order) {
      if (inst.jobs[j].size != 0) continue;
      Time c(inst.jobs[j].release);
      for (int a : pred[j]) c = std::max(c, out.completion[a]);
      out.start[j] = c;
      out.completion[j] = c;
    }
    std::sort(out.segments.begin(), out.segments.end(), [](const MigSegment& a, const MigSegment& b) {
      return a.machine != b.machine ? a.machine < b.machine : a.from < b.from;
    });
    res.schedule = std::move(out);
    res.factor = f;
    res.achieved_speed = rate;
    return res;
  }
  throw Error(ErrorCode::kNoFeasibleSpeed, "no speed factor up to 8 fits every window");
}

// ---------------------------------------------------------------------------
// Driver.

struct PcspResult {
  PcspInstance instance;  // the instance solved: the input, or its chain expansion
  MigratoryResult migratory;
  NonMigratoryResult nonmigratory;
  MigratorySchedule schedule;
  std::int64_t cost = 0;            // sum_j g_j(ceil C_j) of the final schedule
  std::int64_t migratory_cost = 0;  // same for the migratory schedule
  double lp_bound = 0.0;
  double ratio = 1.0;  // cost / lp_bound
  Time speed{6};
};

inline PcspResult solve_pcsp(const PcspInstance& input, const PcspOptions& opts = {}) {
  PcspResult res;
  res.instance = opts.expand_chains ? expand_chains(input).instance : input;
  validate(res.instance);
  res.migratory = migratory_schedule(res.instance, opts);
  res.nonmigratory = make_nonmigratory(res.migratory.schedule, res.instance);
  res.schedule = res.nonmigratory.schedule;
  res.speed = res.nonmigratory.achieved_speed;
  res.cost = total_cost(res.instance, integral_completions(res.schedule));
  res.migratory_cost = total_cost(res.instance, integral_completions(res.migratory.schedule));
  res.lp_bound = res.migratory.lp_solution.objective;
  res.ratio = res.lp_bound > 1e-12 ? static_cast<double>(res.cost) / res.lp_bound : 1.0;
  return res;
}

}  // namespace flowsched
