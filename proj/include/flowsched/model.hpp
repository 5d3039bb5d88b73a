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

// Problem instances, schedules and their validators.
//
// Time is integral and slotted: slot t is the unit interval (t-1, t]. A job
// released at r may use slots r+1, r+2, ...; "done by C" means every unit of
// it sits in a slot <= C. The interval [t1, t2] therefore offers t2 - t1
// units of machine time.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flowsched/delay_cost.hpp"
#include "flowsched/error.hpp"
#include "flowsched/rational.hpp"

namespace flowsched {

// ---------------------------------------------------------------------------
// Concurrent open shop.

struct CosspJob {
  std::int64_t release = 0;
  std::vector<std::int64_t> ops;  // one length per machine
  DelayCost cost;
};

struct CosspInstance {
  int m = 1;
  std::vector<CosspJob> jobs;

  int n() const { return static_cast<int>(jobs.size()); }

  std::int64_t op(int machine, int job) const { return jobs[job].ops[machine]; }

  bool has_work(int job) const {
    const auto& ops = jobs[job].ops;
    return std::any_of(ops.begin(), ops.end(), [](std::int64_t p) { return p > 0; });
  }

  std::int64_t max_op(int job) const {
    const auto& ops = jobs[job].ops;
    return ops.empty() ? 0 : *std::max_element(ops.begin(), ops.end());
  }

  std::int64_t max_release() const {
    std::int64_t r = 0;
    for (const auto& j : jobs) r = std::max(r, j.release);
    return r;
  }

  // L = max_i sum_j p_ij.
  std::int64_t total_load() const {
    std::int64_t best = 0;
    for (int i = 0; i < m; ++i) {
      std::int64_t s = 0;
      for (const auto& j : jobs) s += j.ops[i];
      best = std::max(best, s);
    }
    return best;
  }

  // Latest completion of any work-conserving schedule: the maximum over
  // machines and release times t of t plus the work released at or after t.
  // Equals total_load() when every release is 0.
  std::int64_t horizon() const {
    std::int64_t best = 0;
    for (int i = 0; i < m; ++i) {
      for (const auto& a : jobs) {
        std::int64_t s = a.release;
        for (const auto& b : jobs) {
          if (b.release >= a.release) s += b.ops[i];
        }
        best = std::max(best, s);
      }
    }
    return best;
  }

  // P = max nonzero p / min nonzero p.
  double ratio_p() const {
    std::int64_t lo = 0, hi = 0;
    for (const auto& j : jobs) {
      for (std::int64_t p : j.ops) {
        if (p <= 0) continue;
        hi = std::max(hi, p);
        lo = lo == 0 ? p : std::min(lo, p);
      }
    }
    return lo == 0 ? 1.0 : static_cast<double>(hi) / static_cast<double>(lo);
  }
};

inline void validate(const CosspInstance& inst) {
  if (inst.m < 1) throw Error(ErrorCode::kInvalidInstance, "m must be >= 1");
  if (inst.jobs.empty()) throw Error(ErrorCode::kInvalidInstance, "no jobs");
  bool any = false;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const auto& job = inst.jobs[j];
    if (job.release < 0) {
      throw Error(ErrorCode::kInvalidInstance, "job " + std::to_string(j) + ": negative release");
    }
    if (static_cast<int>(job.ops.size()) != inst.m) {
      throw Error(ErrorCode::kInvalidInstance,
                  "job " + std::to_string(j) + ": expected " + std::to_string(inst.m) +
                      " operation lengths");
    }
    for (std::int64_t p : job.ops) {
      if (p < 0) {
        throw Error(ErrorCode::kInvalidInstance, "job " + std::to_string(j) + ": negative length");
      }
      any = any || p > 0;
    }
  }
  if (!any) throw Error(ErrorCode::kInvalidInstance, "instance has no positive operation");
}

// ---------------------------------------------------------------------------
// Precedence-constrained scheduling on identical machines.

struct PcspJob {
  std::int64_t size = 1;
  std::int64_t release = 1;
  DelayCost cost;
};

struct PcspInstance {
  int m = 1;
  std::vector<PcspJob> jobs;
  std::vector<std::pair<int, int>> edges;  // (j, j'): j precedes j'

  int n() const { return static_cast<int>(jobs.size()); }

  std::vector<std::vector<int>> predecessors() const {
    std::vector<std::vector<int>> pred(jobs.size());
    for (auto [a, b] : edges) pred[b].push_back(a);
    for (auto& v : pred) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return pred;
  }

  std::vector<std::vector<int>> successors() const {
    std::vector<std::vector<int>> succ(jobs.size());
    for (auto [a, b] : edges) succ[a].push_back(b);
    for (auto& v : succ) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return succ;
  }

  std::int64_t total_size() const {
    std::int64_t s = 0;
    for (const auto& j : jobs) s += j.size;
    return s;
  }

  std::int64_t max_release() const {
    std::int64_t r = 0;
    for (const auto& j : jobs) r = std::max(r, j.release);
    return r;
  }

  double ratio_p() const {
    std::int64_t lo = 0, hi = 0;
    for (const auto& j : jobs) {
      if (j.size <= 0) continue;
      hi = std::max(hi, j.size);
      lo = lo == 0 ? j.size : std::min(lo, j.size);
    }
    return lo == 0 ? 1.0 : static_cast<double>(hi) / static_cast<double>(lo);
  }
};

// Kahn's algorithm, always taking the smallest ready index.
inline std::vector<int> topological_order(const PcspInstance& inst) {
  const int n = inst.n();
  std::vector<int> indeg(n, 0);
  const auto succ = inst.successors();
  for (int j = 0; j < n; ++j) {
    for (int k : succ[j]) ++indeg[k];
  }
  std::set<int> ready;
  for (int j = 0; j < n; ++j) {
    if (indeg[j] == 0) ready.insert(j);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    const int j = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(j);
    for (int k : succ[j]) {
      if (--indeg[k] == 0) ready.insert(k);
    }
  }
  if (static_cast<int>(order.size()) != n) {
    throw Error(ErrorCode::kCycleDetected, "precedence relation contains a cycle");
  }
  return order;
}

// Releases and sizes may be 0 here: expanded and generated instances contain
// zero-size dummies released at time 0.
inline void validate(const PcspInstance& inst) {
  if (inst.m < 1) throw Error(ErrorCode::kInvalidInstance, "m must be >= 1");
  if (inst.jobs.empty()) throw Error(ErrorCode::kInvalidInstance, "no jobs");
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    if (inst.jobs[j].size < 0 || inst.jobs[j].release < 0) {
      throw Error(ErrorCode::kInvalidInstance,
                  "job " + std::to_string(j) + ": negative size or release");
    }
  }
  for (auto [a, b] : inst.edges) {
    if (a < 0 || b < 0 || a >= inst.n() || b >= inst.n() || a == b) {
      throw Error(ErrorCode::kInvalidInstance,
                  "bad edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
  }
  topological_order(inst);
}

// ---------------------------------------------------------------------------
// Costs.

template <class Instance>
std::int64_t total_cost(const Instance& inst, const std::vector<std::int64_t>& completion) {
  if (completion.size() != inst.jobs.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "completion vector has wrong length");
  }
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < completion.size(); ++j) {
    if (completion[j] < inst.jobs[j].release) {
      throw Error(ErrorCode::kInvalidArgument,
                  "job " + std::to_string(j) + " completes before its release");
    }
    sum += inst.jobs[j].cost(completion[j]);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Schedules.

struct Violation {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string code, std::string detail) {
    ok = false;
    violations.push_back({std::move(code), std::move(detail)});
  }
};

// Machine runs `job` during slots from+1 .. to.
struct SlotSegment {
  int job = 0;
  std::int64_t from = 0;
  std::int64_t to = 0;
  friend bool operator==(const SlotSegment&, const SlotSegment&) = default;
};

struct Schedule {
  std::vector<std::vector<SlotSegment>> machines;
  std::vector<std::int64_t> completion;
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

inline ValidationReport validate_cossp_schedule(const CosspInstance& inst, const Schedule& s) {
  ValidationReport rep;
  const int n = inst.n();
  if (static_cast<int>(s.machines.size()) != inst.m) {
    rep.add("invalid-reference", "schedule has " + std::to_string(s.machines.size()) +
                                     " machines, instance has " + std::to_string(inst.m));
    return rep;
  }
  if (static_cast<int>(s.completion.size()) != n) {
    rep.add("invalid-reference", "completion vector has wrong length");
    return rep;
  }
  for (int j = 0; j < n; ++j) {
    if (s.completion[j] < inst.jobs[j].release) {
      rep.add("early-processing", "job " + std::to_string(j) + " completes before release");
    }
  }
  for (int i = 0; i < inst.m; ++i) {
    std::vector<std::int64_t> done(n, 0);
    std::vector<SlotSegment> segs;
    for (const auto& seg : s.machines[i]) {
      const std::string where = "machine " + std::to_string(i) + ", job " + std::to_string(seg.job);
      if (seg.job < 0 || seg.job >= n || seg.from >= seg.to) {
        rep.add("invalid-reference", where + ": malformed segment");
        continue;
      }
      if (seg.from < inst.jobs[seg.job].release) {
        rep.add("early-processing", where + ": runs in slot " + std::to_string(seg.from + 1) +
                                        " before release " +
                                        std::to_string(inst.jobs[seg.job].release));
      }
      if (seg.to > s.completion[seg.job]) {
        rep.add("late-processing", where + ": runs in slot " + std::to_string(seg.to) +
                                       " after completion " +
                                       std::to_string(s.completion[seg.job]));
      }
      done[seg.job] += seg.to - seg.from;
      segs.push_back(seg);
    }
    std::sort(segs.begin(), segs.end(),
              [](const SlotSegment& a, const SlotSegment& b) { return a.from < b.from; });
    for (std::size_t k = 1; k < segs.size(); ++k) {
      if (segs[k].from < segs[k - 1].to) {
        rep.add("overlap", "machine " + std::to_string(i) + ": jobs " +
                               std::to_string(segs[k - 1].job) + " and " +
                               std::to_string(segs[k].job) + " share a slot");
      }
    }
    for (int j = 0; j < n; ++j) {
      const std::int64_t need = inst.jobs[j].ops[i];
      if (done[j] < need) {
        rep.add("incomplete", "machine " + std::to_string(i) + ", job " + std::to_string(j) +
                                  ": " + std::to_string(done[j]) + " of " +
                                  std::to_string(need) + " units");
      } else if (done[j] > need) {
        rep.add("over-processed", "machine " + std::to_string(i) + ", job " + std::to_string(j) +
                                      ": " + std::to_string(done[j]) + " of " +
                                      std::to_string(need) + " units");
      }
    }
  }
  return rep;
}

// Continuous-time processing of `job` on `machine` during (from, to] at `rate`.
struct MigSegment {
  int job = 0;
  int machine = 0;
  Time from;
  Time to;
  Time rate{1};
  friend bool operator==(const MigSegment&, const MigSegment&) = default;
};

struct MigratorySchedule {
  Time speed{1};
  std::vector<MigSegment> segments;
  std::vector<Time> start;
  std::vector<Time> completion;
  friend bool operator==(const MigratorySchedule&, const MigratorySchedule&) = default;

  bool is_nonmigratory() const {
    std::map<int, int> where;
    for (const auto& s : segments) {
      auto [it, fresh] = where.emplace(s.job, s.machine);
      if (!fresh && it->second != s.machine) return false;
    }
    return true;
  }
};

struct PcspCheckOptions {
  bool require_nonmigratory = false;
};

inline ValidationReport validate_pcsp_schedule(const PcspInstance& inst,
                                               const MigratorySchedule& s,
                                               PcspCheckOptions opts = {}) {
  ValidationReport rep;
  const int n = inst.n();
  if (static_cast<int>(s.completion.size()) != n || static_cast<int>(s.start.size()) != n) {
    rep.add("invalid-reference", "start/completion vectors have wrong length");
    return rep;
  }
  if (s.speed < Time(1)) rep.add("over-speed", "speed below 1");
  std::vector<Time> done(n, Time(0));
  std::map<int, std::vector<const MigSegment*>> per_machine;
  std::vector<std::vector<const MigSegment*>> per_job(n);
  for (const auto& seg : s.segments) {
    const std::string where = "job " + std::to_string(seg.job);
    if (seg.job < 0 || seg.job >= n || seg.machine < 0 || seg.machine >= inst.m ||
        !(seg.from < seg.to) || seg.rate <= Time(0)) {
      rep.add("invalid-reference", where + ": malformed segment");
      continue;
    }
    if (seg.rate > s.speed) {
      rep.add("over-speed", where + ": rate " + format_time(seg.rate) + " exceeds speed " +
                                format_time(s.speed));
    }
    if (seg.from < Time(inst.jobs[seg.job].release)) {
      rep.add("early-processing", where + ": runs at " + format_time(seg.from) +
                                      " before release");
    }
    if (seg.from < s.start[seg.job] || seg.to > s.completion[seg.job]) {
      rep.add("outside-window", where + ": segment (" + format_time(seg.from) + ", " +
                                    format_time(seg.to) + "] leaves its window");
    }
    done[seg.job] += seg.rate * (seg.to - seg.from);
    per_machine[seg.machine].push_back(&seg);
    per_job[seg.job].push_back(&seg);
  }
  auto by_from = [](const MigSegment* a, const MigSegment* b) { return a->from < b->from; };
  for (auto& [machine, segs] : per_machine) {
    std::sort(segs.begin(), segs.end(), by_from);
    for (std::size_t k = 1; k < segs.size(); ++k) {
      if (segs[k]->from < segs[k - 1]->to) {
        rep.add("overlap", "machine " + std::to_string(machine) + ": jobs " +
                               std::to_string(segs[k - 1]->job) + " and " +
                               std::to_string(segs[k]->job) + " run together at " +
                               format_time(segs[k]->from));
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    auto& segs = per_job[j];
    std::sort(segs.begin(), segs.end(), by_from);
    for (std::size_t k = 1; k < segs.size(); ++k) {
      if (segs[k]->from < segs[k - 1]->to) {
        rep.add("parallel-processing", "job " + std::to_string(j) +
                                           " runs on two machines at " +
                                           format_time(segs[k]->from));
      }
    }
    if (opts.require_nonmigratory) {
      for (const auto* seg : segs) {
        if (seg->machine != segs.front()->machine) {
          rep.add("migration", "job " + std::to_string(j) + " uses several machines");
          break;
        }
      }
    }
    const Time need(inst.jobs[j].size);
    if (done[j] < need) {
      rep.add("incomplete", "job " + std::to_string(j) + ": " + format_time(done[j]) + " of " +
                                format_time(need) + " units");
    } else if (done[j] > need) {
      rep.add("over-processed", "job " + std::to_string(j) + ": " + format_time(done[j]) +
                                    " of " + format_time(need) + " units");
    }
    if (s.completion[j] < Time(inst.jobs[j].release)) {
      rep.add("early-processing", "job " + std::to_string(j) + " completes before release");
    }
  }
  for (auto [a, b] : inst.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) continue;
    bool bad = s.completion[b] < s.completion[a];
    for (const auto* seg : per_job[b]) bad = bad || seg->from < s.completion[a];
    if (bad) {
      rep.add("precedence", "job " + std::to_string(b) + " runs before predecessor " +
                                std::to_string(a) + " completes");
    }
  }
  return rep;
}

// Integer completion times ceil(C) used to charge the delay costs.
inline std::vector<std::int64_t> integral_completions(const MigratorySchedule& s) {
  std::vector<std::int64_t> out;
  out.reserve(s.completion.size());
  for (const auto& c : s.completion) out.push_back(ceil_time(c));
  return out;
}

// ---------------------------------------------------------------------------
// Weight expansion: a job of weight w becomes a weight-0 job followed by w
// zero-size unit-weight dummies. Every vertex of the result is unweighted.

inline PcspInstance expand_weights_to_dummies(const PcspInstance& inst) {
  PcspInstance out;
  out.m = inst.m;
  out.edges = inst.edges;
  out.jobs.reserve(inst.jobs.size());
  for (const auto& job : inst.jobs) {
    if (job.cost.kind() != CostKind::kWeightedFlow) {
      throw Error(ErrorCode::kInvalidArgument, "weight expansion needs weighted-flow costs");
    }
    out.jobs.push_back({job.size, job.release, DelayCost::weighted_flow(0, job.cost.offset())});
  }
  for (int j = 0; j < inst.n(); ++j) {
    const auto& job = inst.jobs[j];
    for (std::int64_t k = 0; k < job.cost.weight(); ++k) {
      out.edges.emplace_back(j, out.n());
      out.jobs.push_back({0, job.release, DelayCost::weighted_flow(1, job.cost.offset())});
    }
  }
  return out;
}

}  // namespace flowsched
