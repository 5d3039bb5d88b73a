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

// Exhaustive baselines for tiny instances.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowsched/cover.hpp"
#include "flowsched/edf.hpp"
#include "flowsched/error.hpp"
#include "flowsched/model.hpp"

namespace flowsched {

inline constexpr std::int64_t kNoCost = std::numeric_limits<std::int64_t>::max();

namespace oracle_detail {

inline std::string key_of(std::int64_t t, const std::vector<std::int64_t>& v) {
  std::string k;
  k.reserve((v.size() + 1) * 2);
  auto put = [&](std::int64_t x) {
    k.push_back(static_cast<char>(x & 0xff));
    k.push_back(static_cast<char>((x >> 8) & 0xff));
  };
  put(t);
  for (auto x : v) put(x);
  return k;
}

}  // namespace oracle_detail

// ---------------------------------------------------------------------------
// COSSP.

struct CosspOptimum {
  std::int64_t cost = kNoCost;
  std::vector<std::int64_t> deadlines;
};

struct CosspOracleLimits {
  int n_limit = 4;
  std::int64_t horizon_limit = 40;
};

// Every C_j in [r_j + max_i p_ij, H]; zero-work jobs sit at r_j. The
// cheapest EDF-feasible vector is optimal because costs are monotone.
inline CosspOptimum opt_cossp(const CosspInstance& inst, const CosspOracleLimits& lim = {}) {
  validate(inst);
  const int n = inst.n();
  const std::int64_t H = inst.horizon();
  if (n > lim.n_limit) {
    throw Error(ErrorCode::kLimitExceeded,
                std::to_string(n) + " jobs exceed the oracle limit of " + std::to_string(lim.n_limit));
  }
  if (H > lim.horizon_limit) {
    throw Error(ErrorCode::kLimitExceeded, "horizon " + std::to_string(H) +
                                               " exceeds the oracle limit of " +
                                               std::to_string(lim.horizon_limit));
  }
  CosspOptimum best;
  std::vector<std::int64_t> d(n);
  std::function<void(int, std::int64_t)> go = [&](int j, std::int64_t partial) {
    if (partial >= best.cost) return;
    if (j == n) {
      if (edf_feasible(inst, d).feasible) {
        best.cost = partial;
        best.deadlines = d;
      }
      return;
    }
    const auto& job = inst.jobs[j];
    if (!inst.has_work(j)) {
      d[j] = job.release;
      go(j + 1, partial + job.cost(job.release));
      return;
    }
    for (std::int64_t t = job.release + inst.max_op(j); t <= std::max(H, job.release); ++t) {
      d[j] = t;
      go(j + 1, partial + job.cost(t));
    }
  };
  go(0, 0);
  if (best.cost == kNoCost) throw Error(ErrorCode::kInternal, "no feasible deadline vector");
  return best;
}

// Direct search over slot assignments: in every slot each machine runs one
// released unfinished operation or idles.
inline std::int64_t opt_cossp_by_schedule_search(const CosspInstance& inst, int n_limit = 3) {
  validate(inst);
  const int n = inst.n();
  const int m = inst.m;
  if (n > n_limit) throw Error(ErrorCode::kLimitExceeded, "schedule search is limited to tiny n");
  const std::int64_t H = inst.horizon();
  std::int64_t base = 0;
  std::vector<std::int64_t> rem;
  for (int j = 0; j < n; ++j) {
    if (!inst.has_work(j)) base += inst.jobs[j].cost(inst.jobs[j].release);
    for (int i = 0; i < m; ++i) rem.push_back(inst.jobs[j].ops[i]);
  }
  std::unordered_map<std::string, std::int64_t> memo;
  std::function<std::int64_t(std::int64_t, std::vector<std::int64_t>&)> f =
      [&](std::int64_t t, std::vector<std::int64_t>& r) -> std::int64_t {
    bool all_done = std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
    if (all_done) return 0;
    if (t >= H + 1) return kNoCost;
    const auto key = oracle_detail::key_of(t, r);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::int64_t best = kNoCost;
    std::vector<int> choice(m, -1);
    std::function<void(int)> pick = [&](int i) {
      if (i == m) {
        std::vector<std::int64_t> nr = r;
        for (int k = 0; k < m; ++k) {
          if (choice[k] >= 0) --nr[choice[k] * m + k];
        }
        std::int64_t add = 0;
        for (int j = 0; j < n; ++j) {
          bool was = false, now = true;
          for (int k = 0; k < m; ++k) {
            was = was || r[j * m + k] > 0;
            now = now && nr[j * m + k] == 0;
          }
          if (was && now) add += inst.jobs[j].cost(t + 1);
        }
        const std::int64_t tail = f(t + 1, nr);
        if (tail != kNoCost) best = std::min(best, add + tail);
        return;
      }
      choice[i] = -1;
      pick(i + 1);
      for (int j = 0; j < n; ++j) {
        if (inst.jobs[j].release <= t && r[j * m + i] > 0) {
          choice[i] = j;
          pick(i + 1);
        }
      }
      choice[i] = -1;
    };
    pick(0);
    memo.emplace(key, best);
    return best;
  };
  const std::int64_t v = f(0, rem);
  if (v == kNoCost) throw Error(ErrorCode::kInternal, "schedule search found nothing");
  return base + v;
}

// Whether some slot schedule meets every deadline: per machine, search over
// which released operation with remaining work runs in each slot.
inline bool deadlines_schedulable_brute_force(const CosspInstance& inst,
                                              const std::vector<std::int64_t>& deadlines) {
  const int n = inst.n();
  if (static_cast<int>(deadlines.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "deadline vector has wrong length");
  }
  for (int j = 0; j < n; ++j) {
    if (inst.has_work(j) && deadlines[j] < inst.jobs[j].release) return false;
  }
  for (int i = 0; i < inst.m; ++i) {
    std::int64_t end = 0;
    std::vector<std::int64_t> rem(n);
    for (int j = 0; j < n; ++j) {
      rem[j] = inst.jobs[j].ops[i];
      if (rem[j] > 0) end = std::max(end, deadlines[j]);
    }
    std::unordered_map<std::string, bool> memo;
    std::function<bool(std::int64_t, std::vector<std::int64_t>&)> ok =
        [&](std::int64_t t, std::vector<std::int64_t>& r) -> bool {
      bool done = true;
      for (int j = 0; j < n; ++j) {
        if (r[j] == 0) continue;
        done = false;
        if (deadlines[j] <= t) return false;
      }
      if (done) return true;
      if (t >= end) return false;
      const auto key = oracle_detail::key_of(t, r);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      bool res = ok(t + 1, r);
      for (int j = 0; j < n && !res; ++j) {
        if (r[j] == 0 || inst.jobs[j].release > t) continue;
        --r[j];
        res = ok(t + 1, r);
        ++r[j];
      }
      memo.emplace(key, res);
      return res;
    };
    if (!ok(0, rem)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// PCSP.

struct PcspOracleLimits {
  int n_limit = 6;
  int m_limit = 2;
  std::int64_t horizon_limit = 40;
  bool migratory = false;
};

struct PcspOptimum {
  std::int64_t cost = kNoCost;
  std::int64_t horizon = 0;
};

// Slot-by-slot search at speed 1 after release preprocessing. A job in
// progress keeps its machine unless `migratory` is set. Zero-size jobs finish
// as soon as they are released and their predecessors are done. An optimal
// schedule never leaves a slot fully idle after the last release while work
// remains, so max r + sum p bounds its horizon.
inline PcspOptimum opt_pcsp(const PcspInstance& input, const PcspOracleLimits& lim = {}) {
  validate(input);
  PcspInstance inst = input;
  {
    const auto pred = input.predecessors();
    for (int j : topological_order(input)) {
      for (int a : pred[j]) {
        inst.jobs[j].release = std::max(inst.jobs[j].release, inst.jobs[a].release + inst.jobs[a].size);
      }
    }
  }
  const int n = inst.n();
  const int m = inst.m;
  if (n > lim.n_limit || m > lim.m_limit) {
    throw Error(ErrorCode::kLimitExceeded, "instance exceeds the PCSP oracle limits");
  }
  const std::int64_t H = inst.max_release() + inst.total_size();
  if (H > lim.horizon_limit) {
    throw Error(ErrorCode::kLimitExceeded, "horizon " + std::to_string(H) + " exceeds the limit");
  }
  const auto pred = inst.predecessors();
  // State: remaining size per job (-1 once a zero-size job is done), then the
  // machine of each job in progress (-1 if none).
  std::unordered_map<std::string, std::int64_t> memo;
  std::function<std::int64_t(std::int64_t, std::vector<std::int64_t>)> f =
      [&](std::int64_t t, std::vector<std::int64_t> s) -> std::int64_t {
    std::int64_t now_cost = 0;
    auto done = [&](int j) { return s[j] == 0 || s[j] == -1; };
    // finish eligible zero-size jobs at t
    for (bool again = true; again;) {
      again = false;
      for (int j = 0; j < n; ++j) {
        if (inst.jobs[j].size != 0 || s[j] == -1 || inst.jobs[j].release > t) continue;
        if (!std::all_of(pred[j].begin(), pred[j].end(), done)) continue;
        s[j] = -1;
        now_cost += inst.jobs[j].cost(t);
        again = true;
      }
    }
    bool all = true;
    for (int j = 0; j < n; ++j) {
      if (!(s[j] == -1 || (inst.jobs[j].size > 0 && s[j] == 0))) all = false;
    }
    if (all) return now_cost;
    if (t >= H) return kNoCost;
    for (int j = 0; j < n; ++j) {
      if (s[j] <= 0 || s[j] == inst.jobs[j].size) s[n + j] = -1;
    }
    const auto key = oracle_detail::key_of(t, s);
    if (auto it = memo.find(key); it != memo.end()) {
      return it->second == kNoCost ? kNoCost : now_cost + it->second;
    }
    std::vector<int> eligible;
    for (int j = 0; j < n; ++j) {
      if (inst.jobs[j].size == 0 || s[j] <= 0 || inst.jobs[j].release > t) continue;
      if (std::all_of(pred[j].begin(), pred[j].end(), done)) eligible.push_back(j);
    }
    std::int64_t best = kNoCost;
    std::vector<int> on(m, -1);
    std::vector<bool> used(n, false);
    std::function<void(int)> pick = [&](int i) {
      if (i == m) {
        std::vector<std::int64_t> ns = s;
        std::int64_t add = 0;
        for (int k = 0; k < m; ++k) {
          if (on[k] < 0) continue;
          const int j = on[k];
          --ns[j];
          ns[n + j] = lim.migratory ? -1 : k;
          if (ns[j] == 0) add += inst.jobs[j].cost(t + 1);
        }
        const std::int64_t tail = f(t + 1, ns);
        if (tail != kNoCost) best = std::min(best, add + tail);
        return;
      }
      on[i] = -1;
      pick(i + 1);
      for (int j : eligible) {
        if (used[j]) continue;
        if (!lim.migratory && s[n + j] >= 0 && s[n + j] != i) continue;
        used[j] = true;
        on[i] = j;
        pick(i + 1);
        used[j] = false;
      }
      on[i] = -1;
    };
    pick(0);
    memo.emplace(key, best);
    return best == kNoCost ? kNoCost : now_cost + best;
  };
  std::vector<std::int64_t> s0(2 * n, -1);
  for (int j = 0; j < n; ++j) s0[j] = inst.jobs[j].size;
  PcspOptimum out;
  out.horizon = H;
  out.cost = f(0, s0);
  if (out.cost == kNoCost) throw Error(ErrorCode::kInternal, "PCSP search found nothing");
  return out;
}

// ---------------------------------------------------------------------------
// Cover.

inline double opt_cover(const CoverInstance& inst, int object_limit = 12) {
  const int k = static_cast<int>(inst.objects.size());
  if (k > object_limit) {
    throw Error(ErrorCode::kLimitExceeded, std::to_string(k) + " objects exceed the limit of " +
                                               std::to_string(object_limit));
  }
  const auto cov = covering_sets(inst);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    double w = 0.0;
    for (int o = 0; o < k; ++o) {
      if (mask & (1u << o)) w += inst.objects[o].weight;
    }
    if (w >= best) continue;
    bool ok = true;
    for (std::size_t p = 0; p < inst.points.size() && ok; ++p) {
      std::int64_t c = 0;
      for (int o : cov[p]) c += (mask >> o) & 1u;
      ok = c >= inst.points[p].demand;
    }
    if (ok) best = w;
  }
  if (!std::isfinite(best)) throw Error(ErrorCode::kUncoverablePoint, "no subset covers every demand");
  return best;
}

}  // namespace flowsched
