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

#include <gtest/gtest.h>

#include "flowsched/cossp.hpp"
#include "flowsched/gen.hpp"
#include "flowsched/io.hpp"
#include "flowsched/oracle.hpp"

namespace flowsched {
namespace {

CosspInstance single(std::int64_t r, std::int64_t p, DelayCost g) {
  CosspInstance inst;
  inst.jobs = {{r, {p}, std::move(g)}};
  return inst;
}

TEST(BreakpointsTest, UnitFlow) {
  const auto bp = breakpoints(single(0, 8, DelayCost::weighted_flow(1, 0)));
  ASSERT_EQ(bp.horizon, 8);
  const auto& jb = bp.jobs[0];
  EXPECT_EQ(jb.q_max, 3);
  EXPECT_EQ(jb.t, (std::vector<std::int64_t>{0, 0, 1, 2, 4, 8}));
  EXPECT_EQ(jb.q_of(0), 0);
  EXPECT_EQ(jb.q_of(3), 2);
  EXPECT_FALSE(jb.q_of(8).has_value());
}

TEST(BreakpointsTest, ZeroCostSaturates) {
  const auto bp = breakpoints(single(0, 4, DelayCost::weighted_tardiness(1, 50)));
  EXPECT_EQ(bp.jobs[0].q_max, -1);
  EXPECT_EQ(bp.jobs[0].at(-1), 4);
}

TEST(BreakpointsTest, ShiftedRelease) {
  const auto bp = breakpoints(single(2, 6, DelayCost::weighted_flow(1, 2)));
  EXPECT_EQ(bp.jobs[0].at(1), 4);
  EXPECT_EQ(bp.jobs[0].at(2), 6);
  for (int q = -1; q <= bp.jobs[0].q_max; ++q) EXPECT_LE(bp.jobs[0].at(q - 1), bp.jobs[0].at(q));
}

TEST(CanonicalPointsTest, SingleJob) {
  const auto inst = single(0, 3, DelayCost::weighted_flow(1, 0));
  const auto pts = canonical_points(inst, breakpoints(inst));
  ASSERT_EQ(pts.size(), 1u);
  std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> got;
  for (const auto& p : pts[0]) got.emplace_back(p.t1, p.t2, p.demand);
  EXPECT_EQ(got, (std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>>{
                     {0, 0, 3}, {0, 1, 2}, {0, 2, 1}}));
}

TEST(CanonicalPointsTest, NoWorkNoPoints) {
  CosspInstance inst;
  inst.jobs = {{0, {0}, DelayCost::weighted_flow(1, 0)}};
  Breakpoints bp;
  bp.horizon = 4;
  bp.jobs = {{0, -1, {0, 0}}};
  EXPECT_TRUE(canonical_points(inst, bp)[0].empty());
}

TEST(CanonicalPointsTest, SeparatedJobsDoNotInteract) {
  CosspInstance inst;
  inst.jobs = {{0, {2}, DelayCost::weighted_flow(1, 0)}, {10, {2}, DelayCost::weighted_flow(1, 10)}};
  const auto pts = canonical_points(inst, breakpoints(inst));
  for (const auto& p : pts[0]) {
    EXPECT_FALSE(p.t1 == 0 && p.t2 >= 10) << p.t1 << "," << p.t2;
  }
}

TEST(Pr2cTest, RectangleGeometry) {
  const auto pr = build_pr2c(single(2, 4, DelayCost::weighted_flow(1, 2)));
  bool found = false;
  for (const auto& r : pr.rects) {
    EXPECT_LT(r.t_lo, r.t_hi);
    if (r.q == 2) {
      found = true;
      EXPECT_EQ(r.x_hi, 2);
      EXPECT_EQ(r.t_lo, 4);
      EXPECT_EQ(r.t_hi, 6);
      EXPECT_EQ(r.cost, 4);
      EXPECT_EQ(r.capacity, (std::vector<std::int64_t>{4}));
    }
  }
  EXPECT_TRUE(found);
}

TEST(Pr2cTest, FreeRectangleHasCostZero) {
  const auto pr = build_pr2c(single(0, 2, DelayCost::weighted_tardiness(1, 1)));
  ASSERT_FALSE(pr.rects.empty());
  EXPECT_EQ(pr.rects[0].q, -1);
  EXPECT_EQ(pr.rects[0].cost, 0);
  EXPECT_EQ(pr.rects[0].t_hi, 1);
}

TEST(Pr2cTest, CoverPredicate) {
  Rectangle r;
  r.x_hi = 3;
  r.t_lo = 4;
  r.t_hi = 6;
  EXPECT_TRUE(r.covers(3, 4));
  EXPECT_TRUE(r.covers(0, 5));
  EXPECT_FALSE(r.covers(4, 5));
  EXPECT_FALSE(r.covers(0, 6));
  EXPECT_FALSE(r.covers(0, 3));
}

// Manual single-machine instance: points given as (t1, t2, demand) all
// covered by every rectangle, rectangles as (capacity, cost).
Pr2cInstance manual(std::vector<std::int64_t> demands,
                    std::vector<std::pair<std::int64_t, std::int64_t>> rects) {
  Pr2cInstance pr;
  pr.m = 1;
  pr.points.resize(1);
  pr.rects_of_job.resize(1);
  pr.has_work = {true};
  for (std::size_t r = 0; r < rects.size(); ++r) {
    Rectangle rect;
    rect.x_hi = 5;
    rect.t_lo = 0;
    rect.t_hi = 5;
    rect.capacity = {rects[r].first};
    rect.cost = rects[r].second;
    pr.rects.push_back(rect);
    pr.rects_of_job[0].push_back(static_cast<int>(r));
  }
  for (auto d : demands) {
    Pr2cPoint p{0, 0, 1, d, {}};
    for (std::size_t r = 0; r < rects.size(); ++r) p.cover.push_back(static_cast<int>(r));
    pr.points[0].push_back(p);
  }
  return pr;
}

TEST(KcLpTest, SingleCoverForced) {
  const auto kc = solve_kc_lp(manual({4}, {{4, 1}}));
  EXPECT_NEAR(kc.solution.values[0], 1.0, 1e-12);
  EXPECT_NEAR(kc.solution.objective, 1.0, 1e-12);
}

TEST(KcLpTest, KnapsackRowCutsHalfSolution) {
  const auto pr = manual({3}, {{2, 1}, {2, 1}});
  const auto lp = build_kc_lp(pr);
  const auto base = solve(lp, LpMode::kRational);
  EXPECT_EQ(base.exact_objective, Exact(3, 2));
  const auto row = cossp_detail::kc_row(pr.points[0][0], pr, {true, false});
  ASSERT_TRUE(row.has_value());
  EXPECT_EQ(row->rhs, Exact(1));
  ASSERT_EQ(row->coeffs.size(), 1u);
  EXPECT_EQ(row->coeffs[0], std::make_pair(1, Exact(1)));
  EXPECT_TRUE(cossp_detail::row_violated(*row, std::vector<Exact>{Exact(3, 4), Exact(3, 4)},
                                         Exact(0)));
}

TEST(KcLpTest, NoPointsNoCost) {
  auto pr = manual({}, {{2, 1}, {2, 3}});
  pr.has_work = {false};
  const auto kc = solve_kc_lp(pr);
  EXPECT_EQ(kc.solution.objective, 0.0);
  for (double v : kc.solution.values) EXPECT_EQ(v, 0.0);
}

TEST(KcLpTest, CutsNeverLowerTheObjective) {
  for (int k = 0; k < 6; ++k) {
    const auto inst = random_cossp(300 + k, 4, 2, 3);
    const auto pr = build_pr2c(inst);
    RowGenOptions opts;
    opts.lp.mode = LpMode::kRational;
    const auto first = solve(build_kc_lp(pr), opts.lp);
    const auto kc = solve_kc_lp(pr, opts);
    EXPECT_GE(kc.solution.exact_objective, first.exact_objective);
  }
}

LpSolution exact_solution(std::vector<Exact> x) {
  LpSolution s;
  s.mode = LpMode::kRational;
  for (const auto& v : x) s.values.push_back(to_double(v));
  s.exact_values = std::move(x);
  return s;
}

TEST(RoundingTest, CoveredPointDisappears) {
  const auto st = classify_and_split(manual({2}, {{2, 1}}), exact_solution({Exact(1)}));
  EXPECT_TRUE(st.picked[0]);
  EXPECT_TRUE(st.points.empty());
}

TEST(RoundingTest, PowersOfTwo) {
  const auto st = classify_and_split(manual({5}, {{5, 1}}), exact_solution({Exact(0)}));
  ASSERT_EQ(st.points.size(), 1u);
  EXPECT_EQ(st.points[0].residual, 5);
  EXPECT_EQ(st.points[0].d_tilde, 8);
  EXPECT_EQ(st.c_tilde[0][0], 4);
  EXPECT_EQ(ceil_pow2(5), 8);
  EXPECT_EQ(floor_pow2(5), 4);
}

TEST(RoundingTest, RectangleClasses) {
  const auto st = classify_and_split(manual({1}, {{2, 1}, {9, 1}}), exact_solution({0, 0}));
  EXPECT_EQ(st.c_min[0], 2);
  EXPECT_EQ(st.c_tilde[0][1], 8);
  EXPECT_EQ(st.rect_class[0][0], 0);
  EXPECT_EQ(st.rect_class[0][1], 2);
}

TEST(RoundingTest, HeavyNeedsLargeRectangles) {
  // 12 x = 1 on a capacity-4 rectangle against d~ = 4.
  const auto st = classify_and_split(manual({4}, {{4, 1}, {1, 1}}),
                                     exact_solution({Exact(1, 13), Exact(0)}));
  ASSERT_EQ(st.points.size(), 1u);
  EXPECT_FALSE(st.points[0].heavy);
  const auto st2 = classify_and_split(manual({3}, {{4, 1}, {4, 1}}),
                                      exact_solution({Exact(1, 24), Exact(1, 24)}));
  ASSERT_EQ(st2.points.size(), 1u);
  EXPECT_TRUE(st2.points[0].heavy);
}

TEST(RoundingTest, LightClassDemandIsFloored) {
  const auto pr = manual({4}, {{1, 1}, {1, 1}, {1, 1}});
  const auto st = classify_and_split(pr, exact_solution({Exact(1, 15), Exact(1, 15), Exact(1, 15)}));
  ASSERT_EQ(st.points.size(), 1u);
  EXPECT_FALSE(st.points[0].heavy);
  EXPECT_EQ(st.points[0].class_demand, (std::vector<std::int64_t>{2}));
  const auto g = build_gmcc(pr, st, 20);
  ASSERT_EQ(g.points.size(), 1u);
  EXPECT_EQ(g.points[0].demand, 2);

  const auto st9 = classify_and_split(pr, exact_solution({Exact(1, 40), Exact(1, 40), Exact(1, 40)}));
  EXPECT_EQ(st9.points[0].class_demand, (std::vector<std::int64_t>{0}));
  EXPECT_TRUE(build_gmcc(pr, st9, 20).points.empty());
}

TEST(RoundingTest, FloatAndExactAgree) {
  const auto pr = manual({4}, {{1, 1}, {1, 1}, {1, 1}});
  LpSolution f;
  f.mode = LpMode::kFloat;
  f.values = {1.0 / 15, 1.0 / 15, 1.0 / 15};
  const auto a = classify_and_split(pr, f);
  const auto b = classify_and_split(pr, exact_solution({Exact(1, 15), Exact(1, 15), Exact(1, 15)}));
  EXPECT_EQ(a.points[0].class_demand, b.points[0].class_demand);
}

// Two machines; one heavy point on machine 1 at (3, 7) with d~ = 4.
struct HccpFixture {
  Pr2cInstance pr;
  RoundingState st;
  HccpFixture() {
    pr.m = 2;
    pr.points = {{}, {{1, 3, 7, 4, {0, 1, 2, 3}}}};
    auto rect = [](std::int64_t x, std::int64_t lo, std::int64_t hi, std::int64_t cap) {
      Rectangle r;
      r.x_hi = x;
      r.t_lo = lo;
      r.t_hi = hi;
      r.cost = 2;
      r.capacity = {0, cap};
      return r;
    };
    pr.rects = {rect(3, 6, 8, 5), rect(2, 6, 8, 4), rect(5, 8, 9, 4), rect(5, 6, 8, 3)};
    st.picked.assign(4, false);
    st.c_tilde = {{0, 0, 0, 0}, {4, 4, 4, 2}};
    RoundedPoint rp;
    rp.machine = 1;
    rp.index = 0;
    rp.residual = 4;
    rp.d_tilde = 4;
    rp.heavy = true;
    st.points = {rp};
  }
};

TEST(HccpTest, PointCoordinates) {
  HccpFixture f;
  const auto ci = build_hccp(f.pr, f.st);
  ASSERT_EQ(ci.points.size(), 1u);
  EXPECT_EQ(ci.points[0].coords, (std::vector<Time>{Time(5, 2), Time(3), Time(7), Time(4)}));
  EXPECT_EQ(ci.points[0].demand, 1);
}

TEST(HccpTest, ZeroCapacityLevelOmitted) {
  HccpFixture f;
  const auto ci = build_hccp(f.pr, f.st);
  for (const auto& obj : ci.objects) EXPECT_EQ(obj.boxes.size(), 1u);
}

TEST(HccpTest, Containment) {
  HccpFixture f;
  const auto ci = build_hccp(f.pr, f.st);
  std::vector<int> hits;
  for (const auto& obj : ci.objects) {
    if (contains(obj, ci.points[0], ci.dim)) hits.push_back(obj.source);
  }
  EXPECT_EQ(hits, (std::vector<int>{0}));
}

TEST(GmccTest, ClassCopiesNeverShareBoxes) {
  const auto inst = random_cossp(41, 6, 2, 4, CostFamily::kMixed);
  const auto pr = build_pr2c(inst);
  const auto kc = solve_kc_lp(pr);
  const auto st = classify_and_split(pr, kc.solution);
  const std::int64_t T = gmcc_shift(inst);
  const auto ci = build_gmcc(pr, st, T);
  for (const auto& p : ci.points) {
    const auto cls = (p.coords[1] / Time(T)).numerator() / (p.coords[1] / Time(T)).denominator();
    for (const auto& obj : ci.objects) {
      for (const auto& box : obj.boxes) {
        if (!box.contains(p.coords)) continue;
        EXPECT_GE(box.ranges[1].lo, Time(cls * T));
        EXPECT_LT(box.ranges[1].lo, Time((cls + 1) * T));
      }
    }
  }
}

TEST(AssembleTest, NothingToCoverKeepsPicked) {
  const auto inst = single(0, 1, DelayCost::weighted_flow(1, 0));
  const auto pr = build_pr2c(inst);
  RoundingState st;
  st.picked.assign(pr.rects.size(), false);
  for (std::size_t r = 0; r < pr.rects.size(); ++r) st.picked[r] = pr.rects[r].t_hi == 1;
  const auto a = assemble_solution(inst, pr, st, {}, {});
  EXPECT_EQ(a.selected, st.picked);
  EXPECT_EQ(a.repaired, 0);
  EXPECT_EQ(a.deadlines, (std::vector<std::int64_t>{1}));
}

TEST(AssembleTest, ShortPointIsRepaired) {
  const auto inst = single(0, 2, DelayCost::weighted_flow(1, 0));
  const auto pr = build_pr2c(inst);
  RoundingState st;
  st.picked.assign(pr.rects.size(), false);
  const auto a = assemble_solution(inst, pr, st, {}, {});
  EXPECT_GT(a.repaired + a.fallback, 0);
  EXPECT_TRUE(edf_feasible(inst, a.deadlines).feasible);
}

TEST(SolveCosspTest, SingleJob) {
  const auto inst = single(2, 3, DelayCost::weighted_flow(1, 2));
  const auto res = solve_cossp(inst);
  EXPECT_EQ(res.schedule.completion, (std::vector<std::int64_t>{5}));
  EXPECT_EQ(res.cost, 3);
  EXPECT_GE(res.ratio, 1.0 - 1e-9);
  EXPECT_LE(res.ratio, 2.0);
}

TEST(SolveCosspTest, IndependentMachines) {
  CosspInstance inst;
  inst.m = 3;
  inst.jobs = {{0, {2, 0, 0}, DelayCost::weighted_flow(1, 0)},
               {1, {0, 3, 0}, DelayCost::weighted_flow(2, 1)},
               {0, {0, 0, 1}, DelayCost::weighted_power(1, 2, 0)}};
  const auto res = solve_cossp(inst);
  EXPECT_TRUE(validate_cossp_schedule(inst, res.schedule).ok);
  EXPECT_EQ(res.cost, 2 + 6 + 1);
}

TEST(SolveCosspTest, ContentionAgainstOracle) {
  CosspInstance inst;
  inst.m = 2;
  inst.jobs = {{0, {2, 1}, DelayCost::weighted_flow(1, 0)},
               {0, {1, 2}, DelayCost::weighted_flow(2, 0)},
               {1, {2, 2}, DelayCost::weighted_flow(1, 1)}};
  const auto res = solve_cossp(inst);
  EXPECT_TRUE(validate_cossp_schedule(inst, res.schedule).ok);
  const auto opt = opt_cossp(inst);
  EXPECT_GE(res.cost, opt.cost);
  EXPECT_GE(static_cast<double>(res.cover_cost), res.lp_bound - 1e-9);
}

TEST(SolveCosspTest, ZeroWorkJobFinishesAtRelease) {
  CosspInstance inst;
  inst.jobs = {{3, {0}, DelayCost::weighted_flow(1, 3)}, {0, {2}, DelayCost::weighted_flow(1, 0)}};
  const auto res = solve_cossp(inst);
  EXPECT_EQ(res.schedule.completion[0], 3);
  EXPECT_EQ(res.deadlines[0], 3);
}

TEST(SolveCosspTest, ModesAgreeOnLpObjective) {
  for (int k = 0; k < 5; ++k) {
    const auto inst = random_cossp(60 + k, 5, 2, 3, CostFamily::kMixed);
    CosspOptions a, b;
    a.mode = LpMode::kRational;
    b.mode = LpMode::kFloat;
    EXPECT_NEAR(solve_cossp(inst, a).lp_bound, solve_cossp(inst, b).lp_bound, 1e-6) << k;
  }
}

TEST(SolveCosspTest, ExactCoverOption) {
  const auto inst = random_cossp(8, 5, 2, 3);
  CosspOptions o;
  o.cover = CoverSolver::kExact;
  const auto res = solve_cossp(inst, o);
  EXPECT_TRUE(validate_cossp_schedule(inst, res.schedule).ok);
}

TEST(SolveCosspTest, Deterministic) {
  const auto inst = random_cossp(13, 7, 3, 3, CostFamily::kMixed);
  const auto a = solve_cossp(inst);
  const auto b = solve_cossp(inst);
  EXPECT_EQ(a.selection, b.selection);
  EXPECT_EQ(to_json(a.schedule).dump(), to_json(b.schedule).dump());
}

}  // namespace
}  // namespace flowsched
