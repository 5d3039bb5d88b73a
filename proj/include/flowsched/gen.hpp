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

// Instance generators: seeded random suites and the two hardness
// constructions (densest-subgraph stream and makespan gap).
//
// Fractional job sizes delta are avoided by multiplying every time and size
// by scale = 1/delta, so reported costs are scale times the unscaled ones.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flowsched/cover.hpp"
#include "flowsched/delay_cost.hpp"
#include "flowsched/error.hpp"
#include "flowsched/model.hpp"

namespace flowsched {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

enum class CostFamily { kFlow, kPower, kTardiness, kTable, kMixed };

inline CostFamily parse_cost_family(std::string_view s) {
  if (s == "flow") return CostFamily::kFlow;
  if (s == "power") return CostFamily::kPower;
  if (s == "tardiness") return CostFamily::kTardiness;
  if (s == "table") return CostFamily::kTable;
  if (s == "mixed") return CostFamily::kMixed;
  throw Error(ErrorCode::kInvalidArgument, "unknown cost family '" + std::string(s) + "'");
}

inline std::string_view to_string(CostFamily f) {
  switch (f) {
    case CostFamily::kFlow: return "flow";
    case CostFamily::kPower: return "power";
    case CostFamily::kTardiness: return "tardiness";
    case CostFamily::kTable: return "table";
    case CostFamily::kMixed: return "mixed";
  }
  return "flow";
}

inline DelayCost random_cost(Rng& rng, CostFamily family, std::int64_t release,
                             std::int64_t span) {
  if (family == CostFamily::kMixed) family = static_cast<CostFamily>(uniform(rng, 0, 3));
  const std::int64_t w = uniform(rng, 1, 3);
  switch (family) {
    case CostFamily::kFlow: return DelayCost::weighted_flow(w, release);
    case CostFamily::kPower: return DelayCost::weighted_power(w, 2, release);
    case CostFamily::kTardiness:
      return DelayCost::weighted_tardiness(w, release + uniform(rng, 0, std::max<std::int64_t>(1, span)));
    case CostFamily::kTable: {
      std::vector<CostStep> steps;
      std::int64_t t = release, v = 0;
      const int count = static_cast<int>(uniform(rng, 1, 4));
      for (int k = 0; k < count; ++k) {
        t += uniform(rng, 1, std::max<std::int64_t>(1, span / 2 + 1));
        v += uniform(rng, 1, 5);
        steps.push_back({t, v});
      }
      return DelayCost::table(std::move(steps));
    }
    case CostFamily::kMixed: break;
  }
  return DelayCost::weighted_flow(w, release);
}

// Releases uniform in [0, n pmax / 2], lengths uniform in [0, pmax] with at
// least one positive length per job.
inline CosspInstance random_cossp(std::uint64_t seed, int n, int m, std::int64_t pmax,
                                  CostFamily family = CostFamily::kFlow) {
  if (n < 1 || m < 1 || pmax < 1) {
    throw Error(ErrorCode::kInvalidInstance, "random_cossp needs n, m, pmax >= 1");
  }
  Rng rng(seed);
  CosspInstance inst;
  inst.m = m;
  const std::int64_t rmax = n * pmax / 2;
  for (int j = 0; j < n; ++j) {
    CosspJob job;
    job.release = uniform(rng, 0, rmax);
    for (int i = 0; i < m; ++i) job.ops.push_back(uniform(rng, 0, pmax));
    if (std::all_of(job.ops.begin(), job.ops.end(), [](std::int64_t p) { return p == 0; })) {
      job.ops[uniform(rng, 0, m - 1)] = uniform(rng, 1, pmax);
    }
    job.cost = random_cost(rng, family, job.release, pmax * m + 2);
    inst.jobs.push_back(std::move(job));
  }
  validate(inst);
  return inst;
}

// Sizes in [1, pmax], releases in [1, max(1, n pmax / (2m))], each pair
// j < j' an edge with probability edge_prob.
inline PcspInstance random_pcsp(std::uint64_t seed, int n, int m, std::int64_t pmax,
                                double edge_prob, CostFamily family = CostFamily::kFlow) {
  if (n < 1 || m < 1 || pmax < 1) {
    throw Error(ErrorCode::kInvalidInstance, "random_pcsp needs n, m, pmax >= 1");
  }
  Rng rng(seed);
  std::bernoulli_distribution coin(std::clamp(edge_prob, 0.0, 1.0));
  PcspInstance inst;
  inst.m = m;
  const std::int64_t rmax = std::max<std::int64_t>(1, n * pmax / (2 * m));
  for (int j = 0; j < n; ++j) {
    PcspJob job;
    job.size = uniform(rng, 1, pmax);
    job.release = uniform(rng, 1, rmax);
    job.cost = random_cost(rng, family, job.release, pmax * 2 + 2);
    inst.jobs.push_back(std::move(job));
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (coin(rng)) inst.edges.emplace_back(a, b);
    }
  }
  validate(inst);
  return inst;
}

// 3-D multi-cover on a grid of side `side`: every object gets one or two
// boxes at distinct levels [2i, 2i + 1] of the first axis, every point sits
// at a level 2i + 1/2 with demand at most the number of objects containing
// it. Points nobody covers are dropped.
inline CoverInstance random_cover(std::uint64_t seed, int points, int objects, int levels = 2,
                                  std::int64_t side = 6, std::int64_t max_demand = 2) {
  if (points < 0 || objects < 1 || levels < 1 || side < 1 || max_demand < 1) {
    throw Error(ErrorCode::kInvalidArgument, "random_cover needs objects, levels, side >= 1");
  }
  Rng rng(seed);
  CoverInstance inst;
  inst.dim = 3;
  auto range = [&](bool open_lo) {
    const std::int64_t a = uniform(rng, 0, side - 1);
    const std::int64_t b = uniform(rng, a + 1, side);
    return open_lo ? Range::open_closed(Time(a), Time(b)) : Range::closed(Time(a), Time(b));
  };
  for (int o = 0; o < objects; ++o) {
    CoverObject obj;
    obj.weight = static_cast<double>(uniform(rng, 1, 8)) / 2.0;
    obj.source = o;
    std::vector<int> lv(levels);
    for (int i = 0; i < levels; ++i) lv[i] = i;
    std::shuffle(lv.begin(), lv.end(), rng);
    const int boxes = static_cast<int>(uniform(rng, 1, std::min(2, levels)));
    for (int b = 0; b < boxes; ++b) {
      Box box;
      box.ranges.push_back(Range::closed(Time(2 * lv[b]), Time(2 * lv[b] + 1)));
      box.ranges.push_back(range(false));
      box.ranges.push_back(range(true));
      obj.boxes.push_back(std::move(box));
    }
    inst.objects.push_back(std::move(obj));
  }
  for (int k = 0; k < points; ++k) {
    CoverPoint p;
    p.coords = {Time(4 * uniform(rng, 0, levels - 1) + 1, 2), Time(uniform(rng, 0, side)),
                Time(uniform(rng, 0, side))};
    p.source = k;
    std::int64_t hits = 0;
    for (const auto& obj : inst.objects) hits += contains(obj, p, inst.dim) ? 1 : 0;
    if (hits == 0) continue;
    p.demand = std::min(hits, uniform(rng, 1, max_demand));
    inst.points.push_back(std::move(p));
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Densest-subgraph reduction (single machine).

struct DksGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  int k = 0;
  std::int64_t L = 0;
  std::int64_t T = 0;
  std::int64_t scale = 0;  // 1/delta; 0 means n^2
  std::vector<int> planted;  // optional witness set of k vertices

  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges.size()); }
  std::int64_t effective_scale() const { return scale > 0 ? scale : std::int64_t{n} * n; }
};

inline void validate(const DksGraph& g) {
  if (g.n < 1) throw Error(ErrorCode::kInvalidInstance, "graph needs a vertex");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n || u == v) {
      throw Error(ErrorCode::kInvalidInstance, "bad graph edge");
    }
    if (!seen.insert(std::minmax(u, v)).second) {
      throw Error(ErrorCode::kInvalidInstance, "graph is not simple");
    }
  }
  if (g.L < 0 || g.L > g.edge_count()) {
    throw Error(ErrorCode::kInvalidInstance, "L must lie in [0, edge count]");
  }
  if (g.T < g.edge_count() - g.L) {
    throw Error(ErrorCode::kInvalidInstance, "T must be at least edge count - L");
  }
}

// Random graph with a clique planted on vertices 0..k-1; L is the number of
// clique edges and T defaults to edge count + 2.
inline DksGraph planted_dks_graph(std::uint64_t seed, int n, int k, double p,
                                  std::int64_t T = -1) {
  if (k < 1 || k > n) throw Error(ErrorCode::kInvalidArgument, "need 1 <= k <= n");
  Rng rng(seed);
  std::bernoulli_distribution coin(std::clamp(p, 0.0, 1.0));
  DksGraph g;
  g.n = n;
  g.k = k;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (v < k || coin(rng)) g.edges.emplace_back(u, v);
    }
  }
  g.L = std::int64_t{k} * (k - 1) / 2;
  g.T = T >= 0 ? T : g.edge_count() + 2;
  for (int v = 0; v < k; ++v) g.planted.push_back(v);
  validate(g);
  return g;
}

struct DksInstance {
  PcspInstance weighted;  // vertex jobs carry weight 1 directly
  PcspInstance instance;  // weights realized by zero-size dummies
  std::int64_t scale = 1;
  std::int64_t stream_start = 0;  // (edge count - L) * scale
  std::vector<int> vertex_job;
  std::vector<int> edge_job;
  std::vector<int> stream_job;
};

// Vertex jobs: size 0, weight 1. Edge jobs: size scale, weight 0, before
// both of their endpoints. Stream: unit jobs of weight 1 released at
// A + k for k = 1 .. (T - (|E| - L)) scale with A = (|E| - L) scale.
inline DksInstance dks_reduction(const DksGraph& g) {
  validate(g);
  DksInstance out;
  out.scale = g.effective_scale();
  const std::int64_t s = out.scale;
  auto& w = out.weighted;
  w.m = 1;
  for (int v = 0; v < g.n; ++v) {
    out.vertex_job.push_back(w.n());
    w.jobs.push_back({0, 0, DelayCost::weighted_flow(1, 0)});
  }
  for (auto [u, v] : g.edges) {
    const int e = w.n();
    out.edge_job.push_back(e);
    w.jobs.push_back({s, 0, DelayCost::weighted_flow(0, 0)});
    w.edges.emplace_back(e, out.vertex_job[u]);
    w.edges.emplace_back(e, out.vertex_job[v]);
  }
  out.stream_start = (g.edge_count() - g.L) * s;
  const std::int64_t count = (g.T - (g.edge_count() - g.L)) * s;
  for (std::int64_t k = 1; k <= count; ++k) {
    out.stream_job.push_back(w.n());
    const std::int64_t r = out.stream_start + k;
    w.jobs.push_back({1, r, DelayCost::weighted_flow(1, r)});
  }
  out.instance = expand_weights_to_dummies(w);
  return out;
}

inline std::int64_t dks_case1_cost(const DksGraph& g) {
  const std::int64_t s = g.effective_scale();
  const std::int64_t mE = g.edge_count();
  return s * ((g.n - g.k) * (mE - g.L) + g.k * (g.T + g.L) + g.T - (mE - g.L));
}

// The schedule of the planted case on the expanded instance: edges outside
// G[S] back to back from 0, the first edge of G[S] in the one free slot
// after A, the stream one slot each, the rest of G[S] after the stream.
// Vertices outside S finish at A, vertices of S at (T + L) scale.
inline MigratorySchedule dks_case1_schedule(const DksGraph& g, const DksInstance& d,
                                            std::vector<int> S = {}) {
  if (S.empty()) S = g.planted;
  std::set<int> in_s(S.begin(), S.end());
  if (static_cast<int>(in_s.size()) != g.k) {
    throw Error(ErrorCode::kInvalidArgument, "witness set must have k distinct vertices");
  }
  std::vector<int> inside, outside;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, v] = g.edges[e];
    (in_s.count(u) && in_s.count(v) ? inside : outside).push_back(static_cast<int>(e));
  }
  if (static_cast<std::int64_t>(inside.size()) != g.L) {
    throw Error(ErrorCode::kInvalidArgument, "G[S] must contain exactly L edges");
  }
  const std::int64_t s = d.scale;
  const std::int64_t A = d.stream_start;
  const int n = d.instance.n();
  MigratorySchedule sch;
  sch.speed = Time(1);
  sch.start.assign(n, Time(0));
  sch.completion.assign(n, Time(0));
  auto run = [&](int job, std::int64_t from, std::int64_t to) {
    sch.segments.push_back({job, 0, Time(from), Time(to), Time(1)});
    sch.completion[job] = Time(to);
  };
  std::int64_t t = 0;
  for (int e : outside) {
    run(d.edge_job[e], t, t + s);
    t += s;
  }
  const std::int64_t stream_end = A + 1 + static_cast<std::int64_t>(d.stream_job.size());
  std::int64_t after = stream_end;
  for (std::size_t q = 0; q < inside.size(); ++q) {
    const int job = d.edge_job[inside[q]];
    if (q == 0) {
      run(job, A, A + 1);
      if (s > 1) run(job, after, after + s - 1);
      after += s - 1;
    } else {
      run(job, after, after + s);
      after += s;
    }
  }
  for (std::size_t k = 0; k < d.stream_job.size(); ++k) {
    const int job = d.stream_job[k];
    const std::int64_t r = d.instance.jobs[job].release;
    sch.start[job] = Time(r);
    run(job, r, r + 1);
  }
  for (int v = 0; v < g.n; ++v) {
    const int job = d.vertex_job[v];
    const Time c(in_s.count(v) ? (g.T + g.L) * s : A);
    sch.start[job] = c;
    sch.completion[job] = c;
  }
  // dummies finish with their parents
  const auto pred = d.instance.predecessors();
  for (int j = d.weighted.n(); j < n; ++j) {
    Time c(d.instance.jobs[j].release);
    for (int a : pred[j]) c = std::max(c, sch.completion[a]);
    sch.start[j] = c;
    sch.completion[j] = c;
  }
  std::sort(sch.segments.begin(), sch.segments.end(),
            [](const MigSegment& a, const MigSegment& b) { return a.from < b.from; });
  return sch;
}

// ---------------------------------------------------------------------------
// Makespan-gap construction.

struct MakespanGapParams {
  double gamma = 2.0;
  double epsilon = 1.0;
  std::int64_t scale = 2;  // 1/delta
};

struct MakespanGapInstance {
  PcspInstance instance;
  std::int64_t scale = 1;
  double T = 1.0;
  int base_jobs = 0;
};

// The base (optimal makespan 1) is scaled by 1/delta and released at 0. In
// unscaled time a delta-size job arrives at every 1 + k delta < T = gamma^epsilon
// and waits for every job released before it.
inline MakespanGapInstance makespan_gap_instance(const PcspInstance& base,
                                                 const MakespanGapParams& p) {
  validate(base);
  if (p.scale < 1 || p.gamma < 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "need gamma >= 1 and 1/delta >= 1");
  }
  MakespanGapInstance out;
  out.scale = p.scale;
  out.T = std::pow(p.gamma, p.epsilon);
  out.base_jobs = base.n();
  auto& inst = out.instance;
  inst.m = base.m;
  for (const auto& job : base.jobs) {
    inst.jobs.push_back({job.size * p.scale, 0, DelayCost::weighted_flow(1, 0)});
  }
  inst.edges = base.edges;
  const double span = (out.T - 1.0) * static_cast<double>(p.scale);
  const std::int64_t count = span <= 0 ? 0 : static_cast<std::int64_t>(std::ceil(span - 1e-9));
  for (std::int64_t k = 0; k < count; ++k) {
    const std::int64_t r = p.scale + k;
    const int j = inst.n();
    inst.jobs.push_back({1, r, DelayCost::weighted_flow(1, r)});
    for (int a = 0; a < j; ++a) {
      if (inst.jobs[a].release < r) inst.edges.emplace_back(a, j);
    }
  }
  return out;
}

}  // namespace flowsched
