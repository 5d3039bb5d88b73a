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

// Concurrent open shop with general delay costs.
//
// Pipeline: cost breakpoints -> canonical intervals as points with demands ->
// one rectangle per (job, cost class) -> covering LP strengthened with
// knapsack-cover rows -> scale by 12, pick the large variables, split the
// residual points into heavy and light -> two uncapacitated geometric cover
// instances -> union of all picks -> deadlines -> EDF schedule.
//
// Rectangle (j, q) covers the point (t1, t2) when t1 <= r_j and
// t_{j,q-1} <= t2 < t_{j,q}. Selecting it gives job j the deadline t_{j,q},
// which is then strictly later than every t2 it is credited for.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flowsched/cover.hpp"
#include "flowsched/delay_cost.hpp"
#include "flowsched/edf.hpp"
#include "flowsched/error.hpp"
#include "flowsched/lp.hpp"
#include "flowsched/model.hpp"
#include "flowsched/rational.hpp"

namespace flowsched {

inline constexpr int kScale = 12;

// Smallest q with 2^q >= g, for g >= 1.
inline int ceil_log2(std::int64_t g) {
  int q = 0;
  while (q < 62 && (std::int64_t{1} << q) < g) ++q;
  return q;
}

// Largest power of two <= v, or 0.
inline std::int64_t floor_pow2(std::int64_t v) {
  if (v <= 0) return 0;
  std::int64_t p = 1;
  while (p <= v / 2) p *= 2;
  return p;
}

// Smallest power of two >= v, for v >= 1.
inline std::int64_t ceil_pow2(std::int64_t v) {
  std::int64_t p = 1;
  while (p < v) p *= 2;
  return p;
}

// ---------------------------------------------------------------------------
// Breakpoints.

struct JobBreakpoints {
  std::int64_t release = 0;
  int q_max = -1;
  std::vector<std::int64_t> t;  // t[q + 2] = t_{j,q} for q = -2 .. q_max

  std::int64_t at(int q) const { return t[q + 2]; }

  // The q with t_{j,q-1} <= time < t_{j,q}; nullopt past the last breakpoint.
  std::optional<int> q_of(std::int64_t time) const {
    for (int q = -1; q <= q_max; ++q) {
      if (at(q - 1) <= time && time < at(q)) return q;
    }
    return std::nullopt;
  }
};

struct Breakpoints {
  std::int64_t horizon = 0;
  std::vector<JobBreakpoints> jobs;
};

// t_{j,q} = largest t in (r_j, H] with g_j(t) <= 2^q, or r_j if there is none,
// for q in [-1, ceil(log2 g_j(H))].
inline Breakpoints breakpoints(const CosspInstance& inst, std::int64_t horizon) {
  Breakpoints bp;
  bp.horizon = horizon;
  for (const auto& job : inst.jobs) {
    JobBreakpoints jb;
    jb.release = job.release;
    const std::int64_t g_end = job.cost(std::max(horizon, job.release));
    jb.q_max = g_end <= 0 ? -1 : std::max(-1, ceil_log2(g_end));
    jb.t.push_back(job.release);
    for (int q = -1; q <= jb.q_max; ++q) {
      const double budget = q < 0 ? 0.5 : static_cast<double>(std::int64_t{1} << q);
      const auto t = latest_time_within_budget(job.cost, budget, job.release, horizon);
      jb.t.push_back(t ? std::max(*t, jb.t.back()) : std::max(job.release, jb.t.back()));
    }
    bp.jobs.push_back(std::move(jb));
  }
  return bp;
}

inline Breakpoints breakpoints(const CosspInstance& inst) {
  return breakpoints(inst, inst.horizon());
}

// ---------------------------------------------------------------------------
// Rectangle cover instance.

struct Pr2cPoint {
  int machine = 0;
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  std::int64_t demand = 0;
  std::vector<int> cover;  // rectangles containing the point with positive capacity here
};

struct Rectangle {
  int job = 0;
  int q = 0;
  std::int64_t x_hi = 0;  // r_j
  std::int64_t t_lo = 0;  // t_{j,q-1}
  std::int64_t t_hi = 0;  // t_{j,q}, the implied deadline
  std::int64_t cost = 0;  // floor(2^q)
  std::vector<std::int64_t> capacity;  // p_ij per machine

  bool covers(std::int64_t t1, std::int64_t t2) const {
    return t1 <= x_hi && t_lo <= t2 && t2 < t_hi;
  }
};

struct Pr2cInstance {
  int m = 1;
  Breakpoints bp;
  std::vector<std::vector<Pr2cPoint>> points;  // per machine
  std::vector<Rectangle> rects;
  std::vector<std::vector<int>> rects_of_job;
  std::vector<bool> has_work;

  std::size_t num_points() const {
    std::size_t s = 0;
    for (const auto& v : points) s += v.size();
    return s;
  }
};

// Intervals [t1, t2] with positive excess, t1 over releases and t2 over
// releases, breakpoints and breakpoints + 1 (up to the horizon).
inline std::vector<std::vector<Pr2cPoint>> canonical_points(const CosspInstance& inst,
                                                            const Breakpoints& bp) {
  std::set<std::int64_t> lefts, rights;
  for (const auto& job : inst.jobs) {
    lefts.insert(job.release);
    rights.insert(job.release);
  }
  for (const auto& jb : bp.jobs) {
    for (std::int64_t t : jb.t) {
      rights.insert(t);
      rights.insert(t + 1);
    }
  }
  std::vector<std::vector<Pr2cPoint>> out(inst.m);
  for (int i = 0; i < inst.m; ++i) {
    for (std::int64_t t1 : lefts) {
      for (std::int64_t t2 : rights) {
        if (t2 < t1 || t2 > bp.horizon) continue;
        const std::int64_t d = excess(inst, i, Interval{t1, t2});
        if (d > 0) out[i].push_back({i, t1, t2, d, {}});
      }
    }
  }
  return out;
}

inline Pr2cInstance build_pr2c(const CosspInstance& inst) {
  validate(inst);
  Pr2cInstance pr;
  pr.m = inst.m;
  pr.bp = breakpoints(inst);
  pr.points = canonical_points(inst, pr.bp);
  pr.rects_of_job.resize(inst.jobs.size());
  for (int j = 0; j < inst.n(); ++j) {
    pr.has_work.push_back(inst.has_work(j));
    if (!pr.has_work.back()) continue;
    const auto& jb = pr.bp.jobs[j];
    for (int q = -1; q <= jb.q_max; ++q) {
      if (jb.at(q - 1) >= jb.at(q)) continue;
      Rectangle r;
      r.job = j;
      r.q = q;
      r.x_hi = inst.jobs[j].release;
      r.t_lo = jb.at(q - 1);
      r.t_hi = jb.at(q);
      r.cost = q < 0 ? 0 : (std::int64_t{1} << q);
      r.capacity = inst.jobs[j].ops;
      pr.rects_of_job[j].push_back(static_cast<int>(pr.rects.size()));
      pr.rects.push_back(std::move(r));
    }
  }
  for (auto& pts : pr.points) {
    for (auto& p : pts) {
      for (std::size_t r = 0; r < pr.rects.size(); ++r) {
        if (pr.rects[r].capacity[p.machine] > 0 && pr.rects[r].covers(p.t1, p.t2)) {
          p.cover.push_back(static_cast<int>(r));
        }
      }
    }
  }
  return pr;
}

// Capacity that the rectangles flagged in `selected` bring to (t1, t2) on a machine.
inline std::int64_t covered_capacity(const Pr2cInstance& pr, const std::vector<bool>& selected,
                                     int machine, std::int64_t t1, std::int64_t t2) {
  std::int64_t c = 0;
  for (std::size_t r = 0; r < pr.rects.size(); ++r) {
    if (selected[r] && pr.rects[r].covers(t1, t2)) c += pr.rects[r].capacity[machine];
  }
  return c;
}

// Deadline per job: latest t_{j,q} among its selected rectangles, else r_j.
inline std::vector<std::int64_t> deadlines_from_selection(const CosspInstance& inst,
                                                          const Pr2cInstance& pr,
                                                          const std::vector<bool>& selected) {
  std::vector<std::int64_t> d;
  for (const auto& job : inst.jobs) d.push_back(job.release);
  for (std::size_t r = 0; r < pr.rects.size(); ++r) {
    if (selected[r]) d[pr.rects[r].job] = std::max(d[pr.rects[r].job], pr.rects[r].t_hi);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Knapsack-cover LP.

struct KcLp {
  LinearProgram lp;
  LpSolution solution;
  int rounds = 0;
};

namespace cossp_detail {

// The knapsack-cover row of point p for the rectangle set `in_s`:
//   sum_{r ∋ p, r ∉ S} min(c_r, d - c(S)) x_r >= d - c(S).
inline std::optional<LpRow> kc_row(const Pr2cPoint& p, const Pr2cInstance& pr,
                                   const std::vector<bool>& in_s) {
  std::int64_t covered = 0;
  for (int r : p.cover) {
    if (in_s[r]) covered += pr.rects[r].capacity[p.machine];
  }
  const std::int64_t residual = p.demand - covered;
  if (residual <= 0) return std::nullopt;
  LpRow row;
  row.sense = RowSense::kGe;
  row.rhs = Exact(residual);
  for (int r : p.cover) {
    if (in_s[r]) continue;
    row.coeffs.emplace_back(r, Exact(std::min(pr.rects[r].capacity[p.machine], residual)));
  }
  return row;
}

template <class Num>
std::vector<bool> picked_set(const std::vector<Num>& x, const Num& tol) {
  std::vector<bool> s(x.size());
  for (std::size_t r = 0; r < x.size(); ++r) s[r] = Num(kScale) * x[r] >= Num(1) - tol;
  return s;
}

template <class Num>
bool row_violated(const LpRow& row, const std::vector<Num>& x, const Num& tol) {
  Num lhs(0);
  for (const auto& [k, a] : row.coeffs) lhs += NumTraits<Num>::from(a) * x[k];
  return lhs < NumTraits<Num>::from(row.rhs) - tol;
}

template <class Num>
std::vector<LpRow> separate(const Pr2cInstance& pr, const std::vector<Num>& x, const Num& tol) {
  const auto in_s = picked_set(x, tol);
  std::vector<LpRow> rows;
  for (const auto& pts : pr.points) {
    for (const auto& p : pts) {
      auto row = kc_row(p, pr, in_s);
      if (row && row_violated(*row, x, tol)) rows.push_back(std::move(*row));
    }
  }
  return rows;
}

}  // namespace cossp_detail

inline std::vector<LpRow> kc_separator(const Pr2cInstance& pr, const LpSolution& sol) {
  if (sol.mode == LpMode::kRational) {
    return cossp_detail::separate<Exact>(pr, sol.exact_values, Exact(0));
  }
  return cossp_detail::separate<double>(pr, sol.values, 1e-9);
}

// The LP before any cut: x_r in [0, 1] (zero-cost rectangles fixed at 1),
// the empty-set knapsack-cover row of every point, and sum_q x_{j,q} >= 1
// for every job with work.
inline LinearProgram build_kc_lp(const Pr2cInstance& pr) {
  LinearProgram lp;
  for (const auto& r : pr.rects) {
    lp.add_variable("x_" + std::to_string(r.job) + "_" + std::to_string(r.q + 1),
                    Exact(r.cost == 0 ? 1 : 0), Exact(1), Exact(r.cost));
  }
  std::set<std::string> seen;
  const std::vector<bool> none(pr.rects.size(), false);
  for (const auto& pts : pr.points) {
    for (const auto& p : pts) {
      auto row = cossp_detail::kc_row(p, pr, none);
      if (!row) continue;
      if (seen.insert(lp_detail::row_key(*row)).second) lp.add_row(std::move(*row));
    }
  }
  for (std::size_t j = 0; j < pr.rects_of_job.size(); ++j) {
    if (!pr.has_work[j] || pr.rects_of_job[j].empty()) continue;
    LpRow row;
    row.sense = RowSense::kGe;
    row.rhs = Exact(1);
    row.name = "job" + std::to_string(j);
    for (int r : pr.rects_of_job[j]) row.coeffs.emplace_back(r, Exact(1));
    lp.add_row(std::move(row));
  }
  return lp;
}

inline KcLp solve_kc_lp(const Pr2cInstance& pr, const RowGenOptions& opts = {}) {
  KcLp out;
  out.lp = build_kc_lp(pr);
  out.solution = solve_with_rows(
      out.lp, [&](const LinearProgram&, const LpSolution& s) { return kc_separator(pr, s); },
      opts);
  if (!out.solution.optimal()) {
    throw Error(ErrorCode::kInternal,
                "covering LP is " + std::string(to_string(out.solution.status)));
  }
  out.rounds = out.solution.rounds;
  return out;
}

// ---------------------------------------------------------------------------
// Rounding.

struct RoundedPoint {
  int machine = 0;
  int index = 0;               // position in pr.points[machine]
  std::int64_t residual = 0;   // d_p - c(S(p))
  std::int64_t d_tilde = 0;    // residual rounded up to a power of two
  int cls = 0;                 // log2(d_tilde / c_min), may be negative
  bool heavy = false;
  std::vector<std::int64_t> class_demand;  // floor of scaled mass per rectangle class
};

struct RoundingState {
  std::vector<double> x_scaled;  // 12 x
  std::vector<bool> picked;      // S
  std::vector<std::vector<std::int64_t>> c_tilde;  // [machine][rect]
  std::vector<std::int64_t> c_min;                 // per machine, 0 if no capacity
  std::vector<std::vector<int>> rect_class;        // [machine][rect], -1 if c_tilde = 0
  std::vector<RoundedPoint> points;                // points with positive residual
  std::vector<LpRow> missing_rows;                 // rows that would restore the light bound

  std::size_t heavy_count() const {
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [](const RoundedPoint& p) { return p.heavy; }));
  }
  std::size_t light_count() const { return points.size() - heavy_count(); }
};

namespace cossp_detail {

inline int log2_exact(std::int64_t v) {
  int k = 0;
  while ((std::int64_t{1} << k) < v) ++k;
  return k;
}

template <class Num>
RoundingState classify(const Pr2cInstance& pr, const std::vector<Num>& x, const Num& tol) {
  using Tr = NumTraits<Num>;
  RoundingState st;
  const std::size_t nr = pr.rects.size();
  for (const auto& v : x) st.x_scaled.push_back(Tr::to_double(v) * kScale);
  st.picked = picked_set(x, tol);
  st.c_tilde.assign(pr.m, std::vector<std::int64_t>(nr, 0));
  st.rect_class.assign(pr.m, std::vector<int>(nr, -1));
  st.c_min.assign(pr.m, 0);
  int max_class = 0;
  for (int i = 0; i < pr.m; ++i) {
    for (std::size_t r = 0; r < nr; ++r) {
      st.c_tilde[i][r] = floor_pow2(pr.rects[r].capacity[i]);
      if (st.c_tilde[i][r] > 0 && (st.c_min[i] == 0 || st.c_tilde[i][r] < st.c_min[i])) {
        st.c_min[i] = st.c_tilde[i][r];
      }
    }
    for (std::size_t r = 0; r < nr; ++r) {
      if (st.c_tilde[i][r] > 0) {
        st.rect_class[i][r] = log2_exact(st.c_tilde[i][r] / st.c_min[i]);
        max_class = std::max(max_class, st.rect_class[i][r]);
      }
    }
  }
  for (int i = 0; i < pr.m; ++i) {
    for (std::size_t pi = 0; pi < pr.points[i].size(); ++pi) {
      const auto& p = pr.points[i][pi];
      std::int64_t covered = 0;
      for (int r : p.cover) {
        if (st.picked[r]) covered += pr.rects[r].capacity[i];
      }
      if (p.demand - covered <= 0) continue;
      RoundedPoint rp;
      rp.machine = i;
      rp.index = static_cast<int>(pi);
      rp.residual = p.demand - covered;
      rp.d_tilde = ceil_pow2(rp.residual);
      {
        // class may be negative when d_tilde < c_min
        int k = 0;
        std::int64_t v = st.c_min[i];
        if (v > 0) {
          while (v < rp.d_tilde) {
            v *= 2;
            ++k;
          }
          std::int64_t w = st.c_min[i];
          while (w > rp.d_tilde) {
            w /= 2;
            --k;
          }
        }
        rp.cls = k;
      }
      Num heavy_mass(0), light_cap(0);
      std::vector<Num> mass(max_class + 1, Num(0));
      for (int r : p.cover) {
        if (st.picked[r]) continue;
        const Num xs = Num(kScale) * x[r];
        if (st.c_tilde[i][r] >= rp.d_tilde) {
          heavy_mass += xs;
        } else {
          light_cap += Num(st.c_tilde[i][r]) * xs;
        }
        if (st.rect_class[i][r] >= 0) mass[st.rect_class[i][r]] += xs;
      }
      rp.heavy = heavy_mass >= Num(1) - tol;
      if (!rp.heavy) {
        if (light_cap < Num(2 * rp.d_tilde) - tol) {
          auto row = kc_row(p, pr, st.picked);
          if (row) st.missing_rows.push_back(std::move(*row));
        }
        for (int k = 0; k <= max_class; ++k) {
          const double m = Tr::to_double(mass[k]);
          std::int64_t e = static_cast<std::int64_t>(std::floor(m + 1e-9));
          if constexpr (std::is_same_v<Num, Exact>) {
            // exact floor
            Exact f = mass[k];
            boost::multiprecision::mpz_int num = boost::multiprecision::numerator(f);
            boost::multiprecision::mpz_int den = boost::multiprecision::denominator(f);
            e = static_cast<std::int64_t>(num / den);
          }
          rp.class_demand.push_back(e);
        }
      }
      st.points.push_back(std::move(rp));
    }
  }
  return st;
}

}  // namespace cossp_detail

inline RoundingState classify_and_split(const Pr2cInstance& pr, const LpSolution& sol) {
  if (sol.mode == LpMode::kRational) {
    return cossp_detail::classify<Exact>(pr, sol.exact_values, Exact(0));
  }
  return cossp_detail::classify<double>(pr, sol.values, 1e-9);
}

// Heavy points become unit-demand 4-D points (2i + 1/2, t1, t2, d~); every
// rectangle r outside S becomes one object with a box
// [2i, 2i+1] x [0, r_j] x [t_lo, t_hi) x [0, c~(i, r)] per machine of positive
// rounded capacity.
inline CoverInstance build_hccp(const Pr2cInstance& pr, const RoundingState& st) {
  CoverInstance ci;
  ci.dim = 4;
  for (std::size_t k = 0; k < st.points.size(); ++k) {
    const auto& rp = st.points[k];
    if (!rp.heavy) continue;
    const auto& p = pr.points[rp.machine][rp.index];
    ci.points.push_back({{Time(4 * rp.machine + 1, 2), Time(p.t1), Time(p.t2), Time(rp.d_tilde)},
                         1,
                         static_cast<int>(k)});
  }
  if (ci.points.empty()) return ci;
  for (std::size_t r = 0; r < pr.rects.size(); ++r) {
    if (st.picked[r]) continue;
    const auto& rect = pr.rects[r];
    CoverObject obj;
    obj.weight = static_cast<double>(rect.cost);
    obj.source = static_cast<int>(r);
    for (int i = 0; i < pr.m; ++i) {
      if (st.c_tilde[i][r] <= 0) continue;
      obj.boxes.push_back({{Range::closed(Time(2 * i), Time(2 * i + 1)),
                            Range::closed(Time(0), Time(rect.x_hi)),
                            Range::closed_open(Time(rect.t_lo), Time(rect.t_hi)),
                            Range::closed(Time(0), Time(st.c_tilde[i][r]))}});
    }
    if (!obj.boxes.empty() && obj.weight > 0) ci.objects.push_back(std::move(obj));
  }
  return ci;
}

// Shift between class copies in the second coordinate.
inline std::int64_t gmcc_shift(const CosspInstance& inst) {
  return 2 * (inst.total_load() + inst.max_release()) + 2;
}

// Light point p of machine i yields, for every rectangle class k with
// e = floor(sum of scaled class-k mass) > 0, the point (2i + 1/2, kT + t1, t2)
// of demand e. A class-k rectangle contributes [2i, 2i+1] x [kT, kT + r_j] x
// [t_lo, t_hi) at machine i, so copies of different classes never meet.
inline CoverInstance build_gmcc(const Pr2cInstance& pr, const RoundingState& st, std::int64_t T) {
  CoverInstance ci;
  ci.dim = 3;
  for (std::size_t k = 0; k < st.points.size(); ++k) {
    const auto& rp = st.points[k];
    if (rp.heavy) continue;
    const auto& p = pr.points[rp.machine][rp.index];
    for (std::size_t cls = 0; cls < rp.class_demand.size(); ++cls) {
      const std::int64_t e = rp.class_demand[cls];
      if (e <= 0) continue;
      const std::int64_t shift = static_cast<std::int64_t>(cls) * T;
      ci.points.push_back({{Time(4 * rp.machine + 1, 2), Time(shift + p.t1), Time(p.t2)},
                           e,
                           static_cast<int>(k)});
    }
  }
  if (ci.points.empty()) return ci;
  for (std::size_t r = 0; r < pr.rects.size(); ++r) {
    if (st.picked[r]) continue;
    const auto& rect = pr.rects[r];
    CoverObject obj;
    obj.weight = static_cast<double>(rect.cost);
    obj.source = static_cast<int>(r);
    for (int i = 0; i < pr.m; ++i) {
      const int cls = st.rect_class[i][r];
      if (cls < 0) continue;
      const std::int64_t shift = static_cast<std::int64_t>(cls) * T;
      obj.boxes.push_back({{Range::closed(Time(2 * i), Time(2 * i + 1)),
                            Range::closed(Time(shift), Time(shift + rect.x_hi)),
                            Range::closed_open(Time(rect.t_lo), Time(rect.t_hi))}});
    }
    if (!obj.boxes.empty() && obj.weight > 0) ci.objects.push_back(std::move(obj));
  }
  return ci;
}

struct Assembly {
  std::vector<bool> selected;
  std::vector<std::int64_t> deadlines;
  int repaired = 0;  // rectangles added because a point was still short
  int fallback = 0;  // jobs with work that had no rectangle at all
};

// S plus the cover preimages, then checked against the true capacities.
// Short points get the cheapest covering rectangle not yet chosen.
inline Assembly assemble_solution(const CosspInstance& inst, const Pr2cInstance& pr,
                                  const RoundingState& st, const std::vector<int>& heavy_rects,
                                  const std::vector<int>& light_rects) {
  Assembly a;
  a.selected = st.picked;
  for (int r : heavy_rects) a.selected[r] = true;
  for (int r : light_rects) a.selected[r] = true;
  for (const auto& pts : pr.points) {
    for (const auto& p : pts) {
      while (true) {
        std::int64_t have = 0;
        for (int r : p.cover) {
          if (a.selected[r]) have += pr.rects[r].capacity[p.machine];
        }
        if (have >= p.demand) break;
        int best = -1;
        for (int r : p.cover) {
          if (a.selected[r]) continue;
          if (best < 0 || pr.rects[r].cost < pr.rects[best].cost) best = r;
        }
        if (best < 0) {
          throw Error(ErrorCode::kResidualUncovered,
                      "point (" + std::to_string(p.t1) + ", " + std::to_string(p.t2) +
                          ") on machine " + std::to_string(p.machine) + " stays short");
        }
        a.selected[best] = true;
        ++a.repaired;
      }
    }
  }
  for (std::size_t j = 0; j < pr.rects_of_job.size(); ++j) {
    if (!pr.has_work[j] || pr.rects_of_job[j].empty()) continue;
    bool any = false;
    for (int r : pr.rects_of_job[j]) any = any || a.selected[r];
    if (any) continue;
    int best = pr.rects_of_job[j].front();
    for (int r : pr.rects_of_job[j]) {
      if (pr.rects[r].cost < pr.rects[best].cost) best = r;
    }
    a.selected[best] = true;
    ++a.fallback;
  }
  a.deadlines = deadlines_from_selection(inst, pr, a.selected);
  return a;
}

// ---------------------------------------------------------------------------
// Driver.

enum class CoverSolver { kGreedy, kExact };

struct CosspOptions {
  std::optional<LpMode> mode;  // default: rational for n <= 8, float above
  int max_rounds = 50;
  CoverSolver cover = CoverSolver::kGreedy;
  int exact_limit = 22;
};

struct CosspResult {
  Schedule schedule;
  std::vector<std::int64_t> deadlines;
  std::int64_t cost = 0;        // sum_j g_j(C_j) of the schedule
  std::int64_t cover_cost = 0;  // sum of floor(2^q) over the selection
  double lp_bound = 0.0;
  double ratio = 1.0;  // cover_cost / lp_bound
  LpMode mode = LpMode::kFloat;
  int lp_rounds = 0;
  int lp_rows = 0;
  std::size_t points = 0;
  std::size_t rects = 0;
  std::size_t picked = 0;
  std::size_t heavy = 0;
  std::size_t light = 0;
  int repaired = 0;
  int fallback = 0;
  std::vector<int> selection;  // rectangle ids
  Pr2cInstance pr2c;
};

inline LpMode default_lp_mode(int n) { return n <= 8 ? LpMode::kRational : LpMode::kFloat; }

inline CosspResult solve_cossp(const CosspInstance& inst, const CosspOptions& opts = {}) {
  CosspResult res;
  res.pr2c = build_pr2c(inst);
  const auto& pr = res.pr2c;
  res.mode = opts.mode.value_or(default_lp_mode(inst.n()));
  RowGenOptions rg;
  rg.lp.mode = res.mode;
  rg.max_iterations = opts.max_rounds;

  KcLp kc;
  kc.lp = build_kc_lp(pr);
  auto sep = [&](const LinearProgram&, const LpSolution& s) { return kc_separator(pr, s); };
  RoundingState st;
  int total_rounds = 0;
  for (int attempt = 0;; ++attempt) {
    kc.solution = solve_with_rows(kc.lp, sep, rg);
    if (!kc.solution.optimal()) {
      throw Error(ErrorCode::kInternal,
                  "covering LP is " + std::string(to_string(kc.solution.status)));
    }
    total_rounds += kc.solution.rounds;
    st = classify_and_split(pr, kc.solution);
    if (st.missing_rows.empty()) break;
    if (attempt + 1 >= opts.max_rounds) {
      throw Error(ErrorCode::kIterationLimitExceeded, "light points keep failing their bound");
    }
    std::set<std::string> seen;
    for (const auto& r : kc.lp.rows()) seen.insert(lp_detail::row_key(r));
    bool added = false;
    for (auto& row : st.missing_rows) {
      if (seen.insert(lp_detail::row_key(row)).second) {
        kc.lp.add_row(std::move(row));
        added = true;
      }
    }
    if (!added) {
      throw Error(ErrorCode::kIterationLimitExceeded,
                  "light bound fails although its row is already present");
    }
  }
  res.lp_rounds = total_rounds;
  res.lp_rows = kc.lp.num_rows();
  res.lp_bound = kc.solution.objective;

  auto solve_cover = [&](const CoverInstance& ci) -> std::vector<int> {
    if (ci.points.empty()) return {};
    const CoverSelection sel = opts.cover == CoverSolver::kExact
                                   ? exact_multicover(ci, opts.exact_limit)
                                   : greedy_multicover(ci);
    std::vector<int> rects;
    for (int o : sel.objects) rects.push_back(ci.objects[o].source);
    return rects;
  };
  const auto heavy = solve_cover(build_hccp(pr, st));
  const auto light = solve_cover(build_gmcc(pr, st, gmcc_shift(inst)));
  const Assembly a = assemble_solution(inst, pr, st, heavy, light);

  res.deadlines = a.deadlines;
  res.schedule = build_edf_schedule(inst, res.deadlines);
  res.cost = total_cost(inst, res.schedule.completion);
  for (std::size_t r = 0; r < pr.rects.size(); ++r) {
    if (!a.selected[r]) continue;
    res.selection.push_back(static_cast<int>(r));
    res.cover_cost += pr.rects[r].cost;
  }
  res.ratio = res.lp_bound > 1e-12 ? static_cast<double>(res.cover_cost) / res.lp_bound : 1.0;
  res.points = pr.num_points();
  res.rects = pr.rects.size();
  res.picked = static_cast<std::size_t>(std::count(st.picked.begin(), st.picked.end(), true));
  res.heavy = st.heavy_count();
  res.light = st.light_count();
  res.repaired = a.repaired;
  res.fallback = a.fallback;
  return res;
}

}  // namespace flowsched
