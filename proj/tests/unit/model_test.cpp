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

#include "flowsched/delay_cost.hpp"
#include "flowsched/io.hpp"
#include "flowsched/model.hpp"

namespace flowsched {
namespace {

bool has_code(const ValidationReport& rep, const std::string& code) {
  for (const auto& v : rep.violations) {
    if (v.code == code) return true;
  }
  return false;
}

CosspInstance one_machine(std::vector<std::pair<std::int64_t, std::int64_t>> jobs) {
  CosspInstance inst;
  inst.m = 1;
  for (auto [r, p] : jobs) inst.jobs.push_back({r, {p}, DelayCost::weighted_flow(1, r)});
  return inst;
}

TEST(DelayCostTest, ClosedForms) {
  EXPECT_EQ(eval_cost(DelayCost::weighted_tardiness(2, 5), 7), 4);
  EXPECT_EQ(eval_cost(DelayCost::weighted_flow(1, 0), 0), 0);
  EXPECT_EQ(eval_cost(DelayCost::weighted_power(3, 2, 1), 4), 27);
}

TEST(DelayCostTest, TableSteps) {
  const auto g = DelayCost::table({{3, 2}, {6, 5}});
  EXPECT_EQ(g(2), 0);
  EXPECT_EQ(g(3), 2);
  EXPECT_EQ(g(5), 2);
  EXPECT_EQ(g(9), 5);
}

TEST(DelayCostTest, TableMustBeMonotone) {
  EXPECT_THROW(DelayCost::table({{3, 5}, {6, 2}}), Error);
  EXPECT_THROW(DelayCost::table({{3, 1}, {3, 2}}), Error);
}

TEST(DelayCostTest, LatestTimeWithinBudget) {
  const auto g = DelayCost::weighted_flow(1, 0);
  EXPECT_FALSE(latest_time_within_budget(g, 0.5, 0, 8).has_value());
  EXPECT_EQ(latest_time_within_budget(g, 4, 0, 8), 4);
  EXPECT_EQ(latest_time_within_budget(g, 100, 0, 8), 8);
}

TEST(TotalCostTest, SumsCosts) {
  const auto inst = one_machine({{0, 1}, {0, 1}});
  EXPECT_EQ(total_cost(inst, {2, 3}), 5);
  EXPECT_EQ(total_cost(inst, {0, 0}), 0);
}

TEST(TotalCostTest, TardinessBeforeDeadlinesIsFree) {
  CosspInstance inst;
  inst.jobs = {{0, {1}, DelayCost::weighted_tardiness(3, 5)},
               {0, {1}, DelayCost::weighted_tardiness(1, 9)}};
  EXPECT_EQ(total_cost(inst, {4, 9}), 0);
}

TEST(TotalCostTest, RejectsCompletionBeforeRelease) {
  const auto inst = one_machine({{2, 1}});
  EXPECT_THROW(total_cost(inst, {1}), Error);
}

TEST(ModelTest, DerivedQuantities) {
  CosspInstance inst;
  inst.m = 2;
  inst.jobs = {{0, {2, 1}, DelayCost::weighted_flow(1, 0)},
               {1, {3, 0}, DelayCost::weighted_flow(1, 1)}};
  EXPECT_EQ(inst.total_load(), 5);
  EXPECT_DOUBLE_EQ(inst.ratio_p(), 3.0);
  EXPECT_EQ(inst.horizon(), 5);
}

TEST(ModelTest, RejectsAllZeroWorkAndCycles) {
  EXPECT_THROW(validate(one_machine({{0, 0}})), Error);
  PcspInstance p;
  p.jobs = {{1, 1, DelayCost::weighted_flow(1, 1)}, {1, 1, DelayCost::weighted_flow(1, 1)}};
  p.edges = {{0, 1}, {1, 0}};
  EXPECT_THROW(validate(p), Error);
}

TEST(ValidateCosspTest, AcceptsHandSchedule) {
  const auto inst = one_machine({{0, 2}, {1, 1}});
  Schedule s;
  s.machines = {{{0, 0, 2}, {1, 2, 3}}};
  s.completion = {2, 3};
  EXPECT_TRUE(validate_cossp_schedule(inst, s).ok);
}

TEST(ValidateCosspTest, EarlyProcessing) {
  const auto inst = one_machine({{1, 1}});
  Schedule s;
  s.machines = {{{0, 0, 1}}};
  s.completion = {1};
  EXPECT_TRUE(has_code(validate_cossp_schedule(inst, s), "early-processing"));
}

TEST(ValidateCosspTest, Incomplete) {
  const auto inst = one_machine({{0, 3}});
  Schedule s;
  s.machines = {{{0, 0, 2}}};
  s.completion = {3};
  EXPECT_TRUE(has_code(validate_cossp_schedule(inst, s), "incomplete"));
}

PcspInstance chain2() {
  PcspInstance p;
  p.m = 2;
  p.jobs = {{1, 1, DelayCost::weighted_flow(1, 1)}, {1, 2, DelayCost::weighted_flow(1, 2)}};
  p.edges = {{0, 1}};
  return p;
}

TEST(ValidatePcspTest, AcceptsChain) {
  MigratorySchedule s;
  s.segments = {{0, 0, Time(1), Time(2), Time(1)}, {1, 0, Time(2), Time(3), Time(1)}};
  s.start = {Time(1), Time(2)};
  s.completion = {Time(2), Time(3)};
  EXPECT_TRUE(validate_pcsp_schedule(chain2(), s).ok);
}

TEST(ValidatePcspTest, SuccessorTooEarly) {
  auto p = chain2();
  p.jobs[1].release = 1;
  MigratorySchedule s;
  s.segments = {{0, 0, Time(1), Time(2), Time(1)}, {1, 1, Time(3, 2), Time(5, 2), Time(1)}};
  s.start = {Time(1), Time(3, 2)};
  s.completion = {Time(2), Time(5, 2)};
  EXPECT_TRUE(has_code(validate_pcsp_schedule(p, s), "precedence"));
}

TEST(ValidatePcspTest, TwoJobsOnOneMachine) {
  PcspInstance p;
  p.m = 1;
  p.jobs = {{1, 1, DelayCost::weighted_flow(1, 1)}, {1, 1, DelayCost::weighted_flow(1, 1)}};
  MigratorySchedule s;
  s.segments = {{0, 0, Time(1), Time(2), Time(1)}, {1, 0, Time(3, 2), Time(5, 2), Time(1)}};
  s.start = {Time(1), Time(3, 2)};
  s.completion = {Time(2), Time(5, 2)};
  EXPECT_TRUE(has_code(validate_pcsp_schedule(p, s), "overlap"));
}

TEST(ValidatePcspTest, MigrationFlaggedOnlyWhenRequired) {
  PcspInstance p;
  p.m = 2;
  p.jobs = {{2, 1, DelayCost::weighted_flow(1, 1)}};
  MigratorySchedule s;
  s.segments = {{0, 0, Time(1), Time(2), Time(1)}, {0, 1, Time(2), Time(3), Time(1)}};
  s.start = {Time(1)};
  s.completion = {Time(3)};
  EXPECT_TRUE(validate_pcsp_schedule(p, s).ok);
  EXPECT_TRUE(has_code(validate_pcsp_schedule(p, s, {true}), "migration"));
}

TEST(DummyExpansionTest, WeightThree) {
  PcspInstance p;
  p.jobs = {{2, 1, DelayCost::weighted_flow(3, 1)}};
  const auto e = expand_weights_to_dummies(p);
  EXPECT_EQ(e.n(), 4);
  EXPECT_EQ(e.edges.size(), 3u);
  for (int j = 1; j < 4; ++j) EXPECT_EQ(e.jobs[j].size, 0);
}

TEST(DummyExpansionTest, WeightOneAndZero) {
  PcspInstance p;
  p.jobs = {{1, 1, DelayCost::weighted_flow(1, 1)}, {1, 1, DelayCost::weighted_flow(0, 1)}};
  const auto e = expand_weights_to_dummies(p);
  EXPECT_EQ(e.n(), 3);
  EXPECT_EQ(e.edges.size(), 1u);
  EXPECT_EQ(e.edges[0], std::make_pair(0, 2));
}

TEST(DummyExpansionTest, PreservesWeightedFlow) {
  PcspInstance p;
  p.jobs = {{2, 1, DelayCost::weighted_flow(3, 1)}, {1, 2, DelayCost::weighted_flow(2, 2)}};
  const auto e = expand_weights_to_dummies(p);
  const std::vector<std::int64_t> C = {5, 4};
  std::vector<std::int64_t> ext = C;
  for (int j = p.n(); j < e.n(); ++j) {
    for (auto [a, b] : e.edges) {
      if (b == j) ext.push_back(C[a]);
    }
  }
  EXPECT_EQ(total_cost(e, ext), total_cost(p, C));
}

TEST(DummyExpansionTest, RejectsOtherKinds) {
  PcspInstance p;
  p.jobs = {{1, 1, DelayCost::weighted_tardiness(1, 3)}};
  EXPECT_THROW(expand_weights_to_dummies(p), Error);
}

TEST(IoTest, CosspRoundTrip) {
  CosspInstance inst;
  inst.m = 2;
  inst.jobs = {{0, {2, 1}, DelayCost::weighted_power(2, 2, 0)},
               {3, {0, 4}, DelayCost::table({{4, 1}, {7, 9}})}};
  const auto back = cossp_from_json(to_json(inst));
  EXPECT_EQ(to_json(back).dump(), to_json(inst).dump());
  EXPECT_EQ(back.jobs[1].cost(8), 9);
}

TEST(IoTest, PcspRoundTripAndScalarSize) {
  const Json j = Json::parse(
      R"({"kind":"pcsp","m":1,"jobs":[{"r":1,"p":2,"cost":{"kind":"weighted-flow","w":1}},)"
      R"({"r":2,"p":[1],"cost":{"kind":"weighted-tardiness","w":1,"d":4}}],"edges":[[0,1]]})");
  const auto p = pcsp_from_json(j);
  EXPECT_EQ(p.jobs[0].size, 2);
  EXPECT_EQ(p.jobs[1].size, 1);
  EXPECT_EQ(p.edges.size(), 1u);
  EXPECT_EQ(pcsp_from_json(to_json(p)).jobs[1].cost(6), 2);
}

TEST(IoTest, RejectsUnknownKind) {
  EXPECT_THROW(instance_from_json(Json::parse(R"({"kind":"flow","m":1,"jobs":[]})")), Error);
}

TEST(IoTest, MigratoryScheduleKeepsRationals) {
  MigratorySchedule s;
  s.speed = Time(6);
  s.segments = {{0, 0, Time(1), Time(7, 6), Time(6)}};
  s.start = {Time(1)};
  s.completion = {Time(7, 6)};
  EXPECT_EQ(migratory_from_json(to_json(s)), s);
}

}  // namespace
}  // namespace flowsched
