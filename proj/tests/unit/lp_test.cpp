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

#include <ostream>

#include "flowsched/lp.hpp"

namespace flowsched {

void PrintTo(LpMode m, std::ostream* os) { *os << to_string(m); }

namespace {

LpRow row(std::vector<std::pair<int, Exact>> c, RowSense s, Exact rhs) {
  LpRow r;
  r.coeffs = std::move(c);
  r.sense = s;
  r.rhs = std::move(rhs);
  return r;
}

class LpModes : public ::testing::TestWithParam<LpMode> {};

TEST_P(LpModes, SingleConstraint) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 0, std::nullopt, 1);
  lp.add_row(row({{x, 1}}, RowSense::kGe, 3));
  const auto sol = solve(lp, GetParam());
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.values[x], 3.0, 1e-9);
  EXPECT_NEAR(sol.objective, 3.0, 1e-9);
}

TEST_P(LpModes, TwoVariables) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 0, std::nullopt, 1);
  const int y = lp.add_variable("y", 0, std::nullopt, 1);
  lp.add_row(row({{x, 1}, {y, 1}}, RowSense::kGe, 2));
  lp.add_row(row({{x, 1}}, RowSense::kLe, Exact(1, 2)));
  const auto sol = solve(lp, GetParam());
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, 2.0, 1e-9);
  EXPECT_LE(max_violation(lp, sol), kLpFeasTol);
}

TEST_P(LpModes, Unbounded) {
  LinearProgram lp;
  lp.add_variable("x", 0, std::nullopt, -1);
  EXPECT_EQ(solve(lp, GetParam()).status, LpStatus::kUnbounded);
}

TEST_P(LpModes, Infeasible) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 0, Exact(1), 1);
  lp.add_row(row({{x, 1}}, RowSense::kGe, 2));
  EXPECT_EQ(solve(lp, GetParam()).status, LpStatus::kInfeasible);
}

TEST_P(LpModes, EqualityAndConstant) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 0, std::nullopt, 2);
  const int y = lp.add_variable("y", 0, std::nullopt, 3);
  lp.add_row(row({{x, 1}, {y, 1}}, RowSense::kEq, 4));
  lp.add_row(row({{y, 1}}, RowSense::kGe, 1));
  lp.set_objective_constant(Exact(5, 2));
  const auto sol = solve(lp, GetParam());
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, 2 * 3 + 3 * 1 + 2.5, 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Both, LpModes, ::testing::Values(LpMode::kRational, LpMode::kFloat),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(LpRationalTest, ExactSolution) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 0, std::nullopt, 1);
  const int y = lp.add_variable("y", 0, std::nullopt, 1);
  lp.add_row(row({{x, 3}, {y, 1}}, RowSense::kGe, 1));
  lp.add_row(row({{x, 1}, {y, 3}}, RowSense::kGe, 1));
  const auto sol = solve(lp, LpMode::kRational);
  ASSERT_TRUE(sol.optimal());
  EXPECT_EQ(sol.exact_objective, Exact(1, 2));
  EXPECT_TRUE(satisfies_exactly(lp, sol));
}

// One point of demand 2, two rectangles of capacity 2.
LinearProgram kc_toy() {
  LinearProgram lp;
  const int a = lp.add_variable("x_a", 0, Exact(1), 1);
  const int b = lp.add_variable("x_b", 0, Exact(1), 2);
  lp.add_row(row({{a, 2}, {b, 2}}, RowSense::kGe, 2));
  return lp;
}

TEST(RowGenerationTest, EmptySeparatorIsPlainSolve) {
  auto lp = kc_toy();
  const auto plain = solve(lp, LpMode::kRational);
  RowGenOptions opts;
  opts.lp.mode = LpMode::kRational;
  const auto gen = solve_with_rows(lp, [](const auto&, const auto&) { return std::vector<LpRow>{}; },
                                   opts);
  EXPECT_EQ(gen.exact_objective, plain.exact_objective);
  EXPECT_EQ(gen.rounds, 1);
}

TEST(RowGenerationTest, KnapsackCoverRowTightens) {
  LinearProgram lp;
  const int a = lp.add_variable("x_a", 0, Exact(1), 1);
  const int b = lp.add_variable("x_b", 0, Exact(1), 1);
  lp.add_row(row({{a, 2}, {b, 2}}, RowSense::kGe, 3));
  RowGenOptions opts;
  opts.lp.mode = LpMode::kRational;
  const auto base = solve(lp, opts.lp);
  EXPECT_EQ(base.exact_objective, Exact(3, 2));
  // With S = {a} the residual is 1 and b must cover it alone.
  const auto sol = solve_with_rows(
      lp,
      [&](const LinearProgram&, const LpSolution& s) {
        std::vector<LpRow> out;
        if (s.exact_values[b] < 1) out.push_back(row({{b, 1}}, RowSense::kGe, 1));
        if (s.exact_values[a] < 1) out.push_back(row({{a, 1}}, RowSense::kGe, 1));
        return out;
      },
      opts);
  EXPECT_GE(sol.exact_objective, base.exact_objective);
  EXPECT_EQ(sol.exact_objective, Exact(2));
  EXPECT_GT(sol.rounds, 1);
}

TEST(RowGenerationTest, DuplicateRowReachesFixedPoint) {
  auto lp = kc_toy();
  const LpRow dup = lp.rows()[0];
  RowGenOptions opts;
  opts.lp.mode = LpMode::kRational;
  const auto sol = solve_with_rows(
      lp, [&](const auto&, const auto&) { return std::vector<LpRow>{dup}; }, opts);
  EXPECT_TRUE(sol.optimal());
  EXPECT_EQ(lp.num_rows(), 1);
  EXPECT_LE(sol.rounds, 2);
}

TEST(RowGenerationTest, IterationLimit) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 0, std::nullopt, 1);
  int k = 0;
  RowGenOptions opts;
  opts.max_iterations = 3;
  EXPECT_THROW(solve_with_rows(
                   lp,
                   [&](const auto&, const auto&) {
                     return std::vector<LpRow>{row({{x, 1}}, RowSense::kGe, ++k)};
                   },
                   opts),
               Error);
}

TEST(LpTextTest, ListsRowsAndBounds) {
  const auto text = to_lp_text(kc_toy());
  EXPECT_NE(text.find("Minimize"), std::string::npos);
  EXPECT_NE(text.find("x_a"), std::string::npos);
  EXPECT_NE(text.find(">= 2"), std::string::npos);
}

}  // namespace
}  // namespace flowsched
