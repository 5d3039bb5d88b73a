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

// Weighted geometric set multi-cover. An object is a union of pairwise
// disjoint axis-aligned boxes; it covers a point at most once.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "flowsched/error.hpp"
#include "flowsched/rational.hpp"

namespace flowsched {

struct Range {
  Time lo;
  Time hi;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(const Time& v) const {
    if (lo_open ? !(v > lo) : v < lo) return false;
    if (hi_open ? !(v < hi) : v > hi) return false;
    return true;
  }
  bool empty() const { return hi < lo || (hi == lo && (lo_open || hi_open)); }

  static Range closed(Time a, Time b) { return {a, b, false, false}; }
  static Range closed_open(Time a, Time b) { return {a, b, false, true}; }
  static Range open_closed(Time a, Time b) { return {a, b, true, false}; }
};

struct Box {
  std::vector<Range> ranges;

  bool contains(const std::vector<Time>& x) const {
    for (std::size_t d = 0; d < ranges.size(); ++d) {
      if (!ranges[d].contains(x[d])) return false;
    }
    return true;
  }
};

struct CoverObject {
  double weight = 1.0;
  std::vector<Box> boxes;
  int source = -1;  // caller's id, e.g. the rectangle this object came from
};

struct CoverPoint {
  std::vector<Time> coords;
  std::int64_t demand = 1;
  int source = -1;
};

struct CoverInstance {
  int dim = 3;
  std::vector<CoverPoint> points;
  std::vector<CoverObject> objects;
};

inline bool contains(const CoverObject& obj, const CoverPoint& p, int dim) {
  if (static_cast<int>(p.coords.size()) != dim) {
    throw Error(ErrorCode::kDimensionMismatch, "point has " + std::to_string(p.coords.size()) +
                                                   " coordinates, expected " + std::to_string(dim));
  }
  for (const auto& b : obj.boxes) {
    if (static_cast<int>(b.ranges.size()) != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "box dimension differs from instance");
    }
    if (b.contains(p.coords)) return true;
  }
  return false;
}

inline bool contains(const CoverInstance& inst, int object, int point) {
  return contains(inst.objects[object], inst.points[point], inst.dim);
}

// covering[p] = sorted ids of objects containing point p.
inline std::vector<std::vector<int>> covering_sets(const CoverInstance& inst) {
  std::vector<std::vector<int>> cov(inst.points.size());
  for (std::size_t p = 0; p < inst.points.size(); ++p) {
    for (std::size_t o = 0; o < inst.objects.size(); ++o) {
      if (contains(inst.objects[o], inst.points[p], inst.dim)) cov[p].push_back(static_cast<int>(o));
    }
  }
  return cov;
}

struct CoverSelection {
  std::vector<int> objects;  // sorted
  double weight = 0.0;
};

inline double selection_weight(const CoverInstance& inst, const std::vector<int>& objs) {
  double w = 0.0;
  for (int o : objs) w += inst.objects[o].weight;
  return w;
}

inline void check_coverable(const CoverInstance& inst, const std::vector<std::vector<int>>& cov) {
  for (std::size_t p = 0; p < inst.points.size(); ++p) {
    if (static_cast<std::int64_t>(cov[p].size()) < inst.points[p].demand) {
      throw Error(ErrorCode::kUncoverablePoint,
                  "point " + std::to_string(p) + " needs " +
                      std::to_string(inst.points[p].demand) + " objects, only " +
                      std::to_string(cov[p].size()) + " contain it");
    }
  }
}

// Repeatedly take the object with the best ratio of still-needed points it
// covers to its weight; ties go to the smallest id.
inline CoverSelection greedy_multicover(const CoverInstance& inst) {
  const auto cov = covering_sets(inst);
  check_coverable(inst, cov);
  const int n_obj = static_cast<int>(inst.objects.size());
  std::vector<std::vector<int>> pts_of(n_obj);
  for (std::size_t p = 0; p < cov.size(); ++p) {
    for (int o : cov[p]) pts_of[o].push_back(static_cast<int>(p));
  }
  std::vector<std::int64_t> residual;
  std::int64_t open = 0;
  for (const auto& p : inst.points) {
    residual.push_back(std::max<std::int64_t>(0, p.demand));
    open += residual.back();
  }
  std::vector<bool> taken(n_obj, false);
  CoverSelection sel;
  while (open > 0) {
    int best = -1;
    std::int64_t best_gain = 0;
    for (int o = 0; o < n_obj; ++o) {
      if (taken[o]) continue;
      std::int64_t gain = 0;
      for (int p : pts_of[o]) gain += residual[p] > 0 ? 1 : 0;
      if (gain == 0) continue;
      const double w = inst.objects[o].weight;
      if (best < 0 || static_cast<double>(gain) * inst.objects[best].weight >
                          static_cast<double>(best_gain) * w) {
        best = o;
        best_gain = gain;
      }
    }
    if (best < 0) throw Error(ErrorCode::kInternal, "greedy cover stalled");
    taken[best] = true;
    for (int p : pts_of[best]) {
      if (residual[p] > 0) {
        --residual[p];
        --open;
      }
    }
  }
  for (int o = 0; o < n_obj; ++o) {
    if (taken[o]) sel.objects.push_back(o);
  }
  sel.weight = selection_weight(inst, sel.objects);
  return sel;
}

namespace cover_detail {

struct Search {
  const CoverInstance& inst;
  std::vector<std::vector<int>> cov;
  std::vector<std::vector<int>> pts_of;
  std::vector<std::int64_t> residual;
  std::vector<int> state;  // 0 undecided, 1 taken, -1 excluded
  double weight = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_set;

  double lower_bound() const {
    double lb = 0.0;
    for (std::size_t p = 0; p < residual.size(); ++p) {
      if (residual[p] <= 0) continue;
      double cheapest = std::numeric_limits<double>::infinity();
      for (int o : cov[p]) {
        if (state[o] != 0) continue;
        int useful = 0;
        for (int q : pts_of[o]) useful += residual[q] > 0 ? 1 : 0;
        cheapest = std::min(cheapest, inst.objects[o].weight / useful);
      }
      lb += static_cast<double>(residual[p]) * cheapest;
    }
    return lb;
  }

  void go() {
    // Most constrained open point: fewest spare undecided candidates.
    int pick = -1;
    std::int64_t slack_best = 0;
    for (std::size_t p = 0; p < residual.size(); ++p) {
      if (residual[p] <= 0) continue;
      std::int64_t avail = 0;
      for (int o : cov[p]) avail += state[o] == 0 ? 1 : 0;
      const std::int64_t slack = avail - residual[p];
      if (slack < 0) return;
      if (pick < 0 || slack < slack_best) {
        pick = static_cast<int>(p);
        slack_best = slack;
      }
    }
    if (pick < 0) {
      if (weight < best - 1e-12) {
        best = weight;
        best_set.clear();
        for (std::size_t o = 0; o < state.size(); ++o) {
          if (state[o] == 1) best_set.push_back(static_cast<int>(o));
        }
      }
      return;
    }
    if (weight + lower_bound() >= best - 1e-12) return;
    // Branch on which undecided candidate is the next one taken for `pick`;
    // the candidates before it are excluded in that branch.
    std::vector<int> cands;
    for (int o : cov[pick]) {
      if (state[o] == 0) cands.push_back(o);
    }
    std::vector<int> excluded;
    for (int o : cands) {
      state[o] = 1;
      weight += inst.objects[o].weight;
      for (int q : pts_of[o]) --residual[q];
      go();
      for (int q : pts_of[o]) ++residual[q];
      weight -= inst.objects[o].weight;
      state[o] = -1;
      excluded.push_back(o);
    }
    for (int o : excluded) state[o] = 0;
  }
};

}  // namespace cover_detail

// Exact minimum-weight multi-cover by branch and bound.
inline CoverSelection exact_multicover(const CoverInstance& inst, int object_limit = 22) {
  if (static_cast<int>(inst.objects.size()) > object_limit) {
    throw Error(ErrorCode::kLimitExceeded, std::to_string(inst.objects.size()) +
                                               " objects exceed the exact limit of " +
                                               std::to_string(object_limit));
  }
  cover_detail::Search s{inst, covering_sets(inst), {}, {}, {}, 0.0,
                         std::numeric_limits<double>::infinity(), {}};
  check_coverable(inst, s.cov);
  s.pts_of.resize(inst.objects.size());
  for (std::size_t p = 0; p < s.cov.size(); ++p) {
    for (int o : s.cov[p]) s.pts_of[o].push_back(static_cast<int>(p));
  }
  for (const auto& p : inst.points) s.residual.push_back(std::max<std::int64_t>(0, p.demand));
  s.state.assign(inst.objects.size(), 0);
  s.go();
  if (!std::isfinite(s.best)) {
    throw Error(ErrorCode::kUncoverablePoint, "no selection meets every demand");
  }
  CoverSelection sel;
  sel.objects = s.best_set;
  sel.weight = selection_weight(inst, sel.objects);
  return sel;
}

struct CoverReport {
  bool ok = true;
  std::vector<std::int64_t> counts;  // selected objects containing each point
  std::vector<int> short_points;
};

inline CoverReport validate_cover(const CoverInstance& inst, const std::vector<int>& selection) {
  CoverReport rep;
  for (std::size_t p = 0; p < inst.points.size(); ++p) {
    std::int64_t c = 0;
    for (int o : selection) {
      if (o >= 0 && o < static_cast<int>(inst.objects.size()) &&
          contains(inst.objects[o], inst.points[p], inst.dim)) {
        ++c;
      }
    }
    rep.counts.push_back(c);
    if (c < inst.points[p].demand) {
      rep.ok = false;
      rep.short_points.push_back(static_cast<int>(p));
    }
  }
  return rep;
}

}  // namespace flowsched
