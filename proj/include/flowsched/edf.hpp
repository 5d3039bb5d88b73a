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

// Excess of an interval, the deadline feasibility test and the per-machine
// earliest-deadline-first schedule.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flowsched/error.hpp"
#include "flowsched/model.hpp"

namespace flowsched {

struct Interval {
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  std::int64_t capacity() const { return t2 - t1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Work of jobs released inside [t1, t2] on `machine`.
inline std::int64_t released_work(const CosspInstance& inst, int machine, Interval I) {
  std::int64_t w = 0;
  for (const auto& job : inst.jobs) {
    if (job.release >= I.t1 && job.release <= I.t2) w += job.ops[machine];
  }
  return w;
}

// xi(i, I) = max{0, P(i, J(I)) - |I|}.
inline std::int64_t excess(const CosspInstance& inst, int machine, Interval I) {
  if (machine < 0 || machine >= inst.m) {
    throw Error(ErrorCode::kInvalidArgument, "machine index out of range");
  }
  return std::max<std::int64_t>(0, released_work(inst, machine, I) - I.capacity());
}

struct EdfWitness {
  int machine = 0;
  Interval interval;
};

struct EdfResult {
  bool feasible = true;
  std::optional<EdfWitness> witness;
};

// Deadlines are feasible iff on every machine and every [t1, t2]
//   sum_{j in J(I), d_j > t2} p_ij >= xi(i, I).
// Only t1 at a release and t2 at a release or deadline need checking.
inline EdfResult edf_feasible(const CosspInstance& inst, const std::vector<std::int64_t>& deadlines) {
  if (deadlines.size() != inst.jobs.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "deadline vector has wrong length");
  }
  std::vector<std::int64_t> left, right;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    left.push_back(inst.jobs[j].release);
    right.push_back(inst.jobs[j].release);
    right.push_back(deadlines[j]);
  }
  std::sort(left.begin(), left.end());
  left.erase(std::unique(left.begin(), left.end()), left.end());
  std::sort(right.begin(), right.end());
  right.erase(std::unique(right.begin(), right.end()), right.end());
  for (int i = 0; i < inst.m; ++i) {
    for (std::int64_t t1 : left) {
      for (std::int64_t t2 : right) {
        if (t2 < t1) continue;
        std::int64_t total = 0, late = 0;
        for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
          const auto& job = inst.jobs[j];
          if (job.release < t1 || job.release > t2) continue;
          total += job.ops[i];
          if (deadlines[j] > t2) late += job.ops[i];
        }
        if (late < total - (t2 - t1)) {
          return {false, EdfWitness{i, Interval{t1, t2}}};
        }
      }
    }
  }
  return {};
}

// Per-machine EDF with ties broken by smaller job index. The completion
// vector holds actual completions, never later than the deadlines.
inline Schedule build_edf_schedule(const CosspInstance& inst,
                                   const std::vector<std::int64_t>& deadlines) {
  const EdfResult check = edf_feasible(inst, deadlines);
  if (!check.feasible) {
    const auto& w = *check.witness;
    throw Error(ErrorCode::kInfeasibleDeadlines,
                "machine " + std::to_string(w.machine) + ", interval [" +
                    std::to_string(w.interval.t1) + ", " + std::to_string(w.interval.t2) + "]");
  }
  const int n = inst.n();
  Schedule s;
  s.machines.resize(inst.m);
  s.completion.resize(n);
  for (int j = 0; j < n; ++j) s.completion[j] = inst.jobs[j].release;

  std::vector<int> by_release(n);
  for (int j = 0; j < n; ++j) by_release[j] = j;
  std::stable_sort(by_release.begin(), by_release.end(), [&](int a, int b) {
    return inst.jobs[a].release < inst.jobs[b].release;
  });

  for (int i = 0; i < inst.m; ++i) {
    std::vector<std::int64_t> left(n);
    for (int j = 0; j < n; ++j) left[j] = inst.jobs[j].ops[i];
    std::vector<int> pending;  // released, unfinished
    std::size_t next = 0;
    std::int64_t t = 0;
    auto& segs = s.machines[i];
    while (true) {
      while (next < by_release.size() && inst.jobs[by_release[next]].release <= t) {
        if (left[by_release[next]] > 0) pending.push_back(by_release[next]);
        ++next;
      }
      if (pending.empty()) {
        if (next == by_release.size()) break;
        t = inst.jobs[by_release[next]].release;
        continue;
      }
      auto best = std::min_element(pending.begin(), pending.end(), [&](int a, int b) {
        if (deadlines[a] != deadlines[b]) return deadlines[a] < deadlines[b];
        return a < b;
      });
      const int j = *best;
      std::int64_t until = t + left[j];
      if (next < by_release.size()) {
        until = std::min(until, inst.jobs[by_release[next]].release);
      }
      if (!segs.empty() && segs.back().job == j && segs.back().to == t) {
        segs.back().to = until;
      } else {
        segs.push_back({j, t, until});
      }
      left[j] -= until - t;
      t = until;
      if (left[j] == 0) {
        pending.erase(best);
        s.completion[j] = std::max(s.completion[j], t);
      }
    }
  }
  return s;
}

}  // namespace flowsched
