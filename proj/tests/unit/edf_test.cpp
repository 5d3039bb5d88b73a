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

#include "flowsched/edf.hpp"
#include "flowsched/gen.hpp"
#include "flowsched/oracle.hpp"

namespace flowsched {
namespace {

CosspInstance one_machine(std::vector<std::pair<std::int64_t, std::int64_t>> jobs) {
  CosspInstance inst;
  inst.m = 1;
  for (auto [r, p] : jobs) inst.jobs.push_back({r, {p}, DelayCost::weighted_flow(1, r)});
  return inst;
}

TEST(ExcessTest, NoReleasesInside) {
  const auto inst = one_machine({{5, 3}});
  EXPECT_EQ(excess(inst, 0, {0, 3}), 0);
}

TEST(ExcessTest, OverloadedInterval) {
  const auto inst = one_machine({{1, 3}, {2, 2}});
  EXPECT_EQ(excess(inst, 0, {1, 3}), 3);
}

TEST(ExcessTest, ClampedAtZero) {
  const auto inst = one_machine({{0, 1}, {1, 1}});
  EXPECT_EQ(excess(inst, 0, {0, 5}), 0);
  EXPECT_THROW(excess(inst, 1, {0, 5}), Error);
}

TEST(EdfTest, FeasibleDeadlines) {
  const auto inst = one_machine({{0, 2}, {0, 2}});
  EXPECT_TRUE(edf_feasible(inst, {2, 4}).feasible);
}

TEST(EdfTest, InfeasibleDeadlinesGiveWitness) {
  const auto inst = one_machine({{0, 2}, {0, 2}});
  const auto res = edf_feasible(inst, {2, 3});
  ASSERT_FALSE(res.feasible);
  ASSERT_TRUE(res.witness.has_value());
  EXPECT_EQ(res.witness->machine, 0);
  EXPECT_EQ(res.witness->interval, (Interval{0, 3}));
}

TEST(EdfTest, ZeroLengthJobAtRelease) {
  CosspInstance inst;
  inst.jobs = {{3, {0}, DelayCost::weighted_flow(1, 3)}, {0, {1}, DelayCost::weighted_flow(1, 0)}};
  EXPECT_TRUE(edf_feasible(inst, {3, 1}).feasible);
}

TEST(EdfScheduleTest, MeetsDeadlines) {
  const auto inst = one_machine({{0, 2}, {0, 2}});
  const auto s = build_edf_schedule(inst, {2, 4});
  EXPECT_EQ(s.completion, (std::vector<std::int64_t>{2, 4}));
  EXPECT_TRUE(validate_cossp_schedule(inst, s).ok);
}

TEST(EdfScheduleTest, UncontendedMachines) {
  CosspInstance inst;
  inst.m = 2;
  inst.jobs = {{1, {3, 0}, DelayCost::weighted_flow(1, 1)}, {2, {0, 2}, DelayCost::weighted_flow(1, 2)}};
  const auto s = build_edf_schedule(inst, {10, 10});
  EXPECT_EQ(s.completion, (std::vector<std::int64_t>{4, 4}));
}

TEST(EdfScheduleTest, TiesGoToLowerIndex) {
  const auto inst = one_machine({{0, 1}, {0, 1}});
  const auto a = build_edf_schedule(inst, {2, 2});
  EXPECT_EQ(a.completion, (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(a, build_edf_schedule(inst, {2, 2}));
}

TEST(EdfScheduleTest, RejectsInfeasible) {
  const auto inst = one_machine({{0, 2}, {0, 2}});
  try {
    build_edf_schedule(inst, {2, 3});
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleDeadlines);
  }
}

TEST(EdfPropertyTest, AgreesWithBruteForceOnRandomInstances) {
  Rng rng(77);
  for (int k = 0; k < 60; ++k) {
    const int n = static_cast<int>(uniform(rng, 1, 4));
    const auto inst = random_cossp(500 + k, n, 1 + k % 2, 3);
    std::vector<std::int64_t> d(n);
    for (int j = 0; j < n; ++j) {
      d[j] = uniform(rng, inst.jobs[j].release, std::max(inst.jobs[j].release, inst.horizon()));
    }
    const bool fast = edf_feasible(inst, d).feasible;
    ASSERT_EQ(fast, deadlines_schedulable_brute_force(inst, d)) << "instance " << k;
    if (fast) {
      const auto s = build_edf_schedule(inst, d);
      EXPECT_TRUE(validate_cossp_schedule(inst, s).ok);
      for (int j = 0; j < n; ++j) EXPECT_LE(s.completion[j], d[j]);
    }
  }
}

// Restricting the interval endpoints loses nothing against full enumeration.
TEST(EdfPropertyTest, RestrictedIntervalsMatchFullEnumeration) {
  Rng rng(91);
  for (int k = 0; k < 40; ++k) {
    const int n = static_cast<int>(uniform(rng, 1, 4));
    const auto inst = random_cossp(900 + k, n, 1, 3);
    std::vector<std::int64_t> d(n);
    for (int j = 0; j < n; ++j) {
      d[j] = uniform(rng, inst.jobs[j].release, std::max(inst.jobs[j].release, inst.horizon()));
    }
    bool full = true;
    const std::int64_t H = std::max(inst.horizon(), *std::max_element(d.begin(), d.end()));
    for (std::int64_t t1 = 0; t1 <= H && full; ++t1) {
      for (std::int64_t t2 = t1; t2 <= H && full; ++t2) {
        std::int64_t late = 0;
        for (int j = 0; j < n; ++j) {
          const auto& job = inst.jobs[j];
          if (job.release >= t1 && job.release <= t2 && d[j] > t2) late += job.ops[0];
        }
        full = late >= excess(inst, 0, {t1, t2});
      }
    }
    EXPECT_EQ(edf_feasible(inst, d).feasible, full) << "instance " << k;
  }
}

}  // namespace
}  // namespace flowsched
