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

// Linear programs with rational data, solved by the dense simplex in either
// exact or floating-point arithmetic, plus a cutting-plane driver.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "flowsched/error.hpp"
#include "flowsched/rational.hpp"
#include "flowsched/simplex.hpp"

namespace flowsched {

enum class LpMode { kRational, kFloat };

inline std::string_view to_string(LpMode m) {
  return m == LpMode::kRational ? "rational" : "float";
}

inline LpMode parse_lp_mode(std::string_view s) {
  if (s == "rational" || s == "exact") return LpMode::kRational;
  if (s == "float" || s == "double") return LpMode::kFloat;
  throw Error(ErrorCode::kInvalidArgument, "unknown LP mode '" + std::string(s) + "'");
}

struct LpVariable {
  std::string name;
  Exact lower{0};
  std::optional<Exact> upper;  // nullopt = +infinity
  Exact cost{0};
};

struct LpRow {
  std::vector<std::pair<int, Exact>> coeffs;
  RowSense sense = RowSense::kGe;
  Exact rhs{0};
  std::string name;
};

class LinearProgram {
 public:
  int add_variable(std::string name, Exact lower, std::optional<Exact> upper, Exact cost) {
    if (upper && *upper < lower) {
      throw Error(ErrorCode::kInvalidArgument, "variable '" + name + "' has empty bounds");
    }
    vars_.push_back({std::move(name), std::move(lower), std::move(upper), std::move(cost)});
    return static_cast<int>(vars_.size()) - 1;
  }

  void add_row(LpRow row) {
    for (const auto& [k, a] : row.coeffs) {
      if (k < 0 || k >= num_vars()) {
        throw Error(ErrorCode::kInvalidArgument, "row references unknown variable");
      }
    }
    rows_.push_back(std::move(row));
  }

  void set_objective_constant(Exact c) { constant_ = std::move(c); }
  const Exact& objective_constant() const { return constant_; }

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<LpVariable>& variables() const { return vars_; }
  const std::vector<LpRow>& rows() const { return rows_; }
  LpVariable& variable(int k) { return vars_[k]; }

 private:
  std::vector<LpVariable> vars_;
  std::vector<LpRow> rows_;
  Exact constant_{0};
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

inline std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  LpMode mode = LpMode::kFloat;
  std::vector<double> values;
  double objective = 0.0;
  // Filled in rational mode only.
  std::vector<Exact> exact_values;
  Exact exact_objective{0};
  std::int64_t pivots = 0;
  int rounds = 1;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

struct LpOptions {
  LpMode mode = LpMode::kFloat;
  std::int64_t max_pivots = 5'000'000;
};

inline constexpr double kLpFeasTol = 1e-7;

namespace lp_detail {

template <class Num>
DenseProblem<Num> densify(const LinearProgram& lp) {
  using Tr = NumTraits<Num>;
  DenseProblem<Num> p;
  p.n = lp.num_vars();
  for (const auto& v : lp.variables()) {
    p.cost.push_back(Tr::from(v.cost));
    p.lower.push_back(Tr::from(v.lower));
    p.has_upper.push_back(v.upper.has_value());
    p.upper.push_back(v.upper ? Tr::from(*v.upper) : Num(0));
  }
  for (const auto& r : lp.rows()) {
    std::vector<std::pair<int, Num>> coeffs;
    for (const auto& [k, a] : r.coeffs) {
      if (a != 0) coeffs.emplace_back(k, Tr::from(a));
    }
    p.rows.push_back(std::move(coeffs));
    p.sense.push_back(r.sense);
    p.rhs.push_back(Tr::from(r.rhs));
  }
  return p;
}

template <class Num>
LpSolution run(const LinearProgram& lp, const LpOptions& opts) {
  using Tr = NumTraits<Num>;
  const auto problem = densify<Num>(lp);
  DenseSimplex<Num> simplex(problem, opts.max_pivots);
  const auto res = simplex.run();
  LpSolution sol;
  sol.mode = opts.mode;
  sol.pivots = res.pivots;
  switch (res.status) {
    case SimplexStatus::kOptimal: sol.status = LpStatus::kOptimal; break;
    case SimplexStatus::kInfeasible: sol.status = LpStatus::kInfeasible; break;
    case SimplexStatus::kUnbounded: sol.status = LpStatus::kUnbounded; break;
  }
  if (!sol.optimal()) return sol;
  for (const auto& v : res.x) sol.values.push_back(Tr::to_double(v));
  sol.objective = Tr::to_double(res.objective) + to_double(lp.objective_constant());
  if constexpr (std::is_same_v<Num, Exact>) {
    sol.exact_values = res.x;
    sol.exact_objective = res.objective + lp.objective_constant();
  }
  return sol;
}

inline std::string row_key(const LpRow& r) {
  auto sorted = r.coeffs;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::ostringstream os;
  os << static_cast<int>(r.sense) << '|' << r.rhs;
  for (const auto& [k, a] : sorted) {
    if (a != 0) os << '|' << k << ':' << a;
  }
  return os.str();
}

}  // namespace lp_detail

inline double max_violation(const LinearProgram& lp, const LpSolution& sol);

// A float answer that is not optimal, or misses a row by more than
// kLpFeasTol, is replaced by the rational one (its mode then says so).
inline LpSolution solve(const LinearProgram& lp, const LpOptions& opts = {}) {
  if (opts.mode == LpMode::kRational) return lp_detail::run<Exact>(lp, opts);
  LpSolution sol = lp_detail::run<double>(lp, opts);
  if (sol.optimal() && max_violation(lp, sol) <= kLpFeasTol) return sol;
  LpOptions exact = opts;
  exact.mode = LpMode::kRational;
  const std::int64_t float_pivots = sol.pivots;
  sol = lp_detail::run<Exact>(lp, exact);
  sol.pivots += float_pivots;
  return sol;
}

inline LpSolution solve(const LinearProgram& lp, LpMode mode) {
  LpOptions opts;
  opts.mode = mode;
  return solve(lp, opts);
}

// Largest violation of any row or bound by `sol`; 0 when it is feasible.
inline double max_violation(const LinearProgram& lp, const LpSolution& sol) {
  double worst = 0.0;
  for (int k = 0; k < lp.num_vars(); ++k) {
    const auto& v = lp.variables()[k];
    worst = std::max(worst, to_double(v.lower) - sol.values[k]);
    if (v.upper) worst = std::max(worst, sol.values[k] - to_double(*v.upper));
  }
  for (const auto& r : lp.rows()) {
    double lhs = 0.0;
    for (const auto& [k, a] : r.coeffs) lhs += to_double(a) * sol.values[k];
    const double rhs = to_double(r.rhs);
    if (r.sense != RowSense::kLe) worst = std::max(worst, rhs - lhs);
    if (r.sense != RowSense::kGe) worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

// Exact feasibility check of a rational-mode solution.
inline bool satisfies_exactly(const LinearProgram& lp, const LpSolution& sol) {
  if (sol.exact_values.size() != static_cast<std::size_t>(lp.num_vars())) return false;
  for (int k = 0; k < lp.num_vars(); ++k) {
    const auto& v = lp.variables()[k];
    if (sol.exact_values[k] < v.lower) return false;
    if (v.upper && sol.exact_values[k] > *v.upper) return false;
  }
  for (const auto& r : lp.rows()) {
    Exact lhs{0};
    for (const auto& [k, a] : r.coeffs) lhs += a * sol.exact_values[k];
    if (r.sense != RowSense::kLe && lhs < r.rhs) return false;
    if (r.sense != RowSense::kGe && lhs > r.rhs) return false;
  }
  return true;
}

using Separator = std::function<std::vector<LpRow>(const LinearProgram&, const LpSolution&)>;

struct RowGenOptions {
  LpOptions lp;
  int max_iterations = 50;
};

// Solve, ask the separator for cuts, add the new ones, repeat until the
// separator has nothing new. Rows already present are ignored, so a
// separator that repeats itself reaches the fixed point immediately.
inline LpSolution solve_with_rows(LinearProgram& lp, const Separator& separator,
                                  const RowGenOptions& opts = {}) {
  std::set<std::string> seen;
  for (const auto& r : lp.rows()) seen.insert(lp_detail::row_key(r));
  for (int round = 1;; ++round) {
    LpSolution sol = solve(lp, opts.lp);
    sol.rounds = round;
    if (!sol.optimal()) return sol;
    bool added = false;
    for (auto& row : separator(lp, sol)) {
      if (seen.insert(lp_detail::row_key(row)).second) {
        lp.add_row(std::move(row));
        added = true;
      }
    }
    if (!added) return sol;
    if (round >= opts.max_iterations) {
      throw Error(ErrorCode::kIterationLimitExceeded,
                  "row generation did not converge in " + std::to_string(opts.max_iterations) +
                      " rounds");
    }
  }
}

// CPLEX-style LP text; see docs/lp-format.md for the grammar.
inline std::string to_lp_text(const LinearProgram& lp) {
  std::ostringstream os;
  os.precision(17);
  auto name_of = [&](int k) {
    const auto& n = lp.variables()[k].name;
    return n.empty() ? "x" + std::to_string(k) : n;
  };
  auto term = [&](std::ostringstream& o, const Exact& a, int k, bool first) {
    const double v = to_double(a);
    if (v < 0) {
      o << (first ? "- " : " - ") << -v << ' ' << name_of(k);
    } else {
      o << (first ? "" : " + ") << v << ' ' << name_of(k);
    }
  };
  os << "\\ flowsched LP, " << lp.num_vars() << " variables, " << lp.num_rows() << " rows\n";
  os << "Minimize\n obj:";
  bool first = true;
  for (int k = 0; k < lp.num_vars(); ++k) {
    if (lp.variables()[k].cost == 0) continue;
    os << ' ';
    term(os, lp.variables()[k].cost, k, first);
    first = false;
  }
  if (lp.objective_constant() != 0) {
    os << (first ? " " : " + ") << to_double(lp.objective_constant()) << " constant";
    first = false;
  }
  if (first) os << " 0 " << (lp.num_vars() > 0 ? name_of(0) : "x0");
  os << "\nSubject To\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    const auto& r = lp.rows()[i];
    os << ' ' << (r.name.empty() ? "r" + std::to_string(i) : r.name) << ':';
    bool f = true;
    for (const auto& [k, a] : r.coeffs) {
      if (a == 0) continue;
      os << ' ';
      term(os, a, k, f);
      f = false;
    }
    if (f) os << " 0 " << (lp.num_vars() > 0 ? name_of(0) : "x0");
    os << (r.sense == RowSense::kGe ? " >= " : r.sense == RowSense::kLe ? " <= " : " = ")
       << to_double(r.rhs) << '\n';
  }
  os << "Bounds\n";
  if (lp.objective_constant() != 0) os << " constant = 1\n";
  for (int k = 0; k < lp.num_vars(); ++k) {
    const auto& v = lp.variables()[k];
    os << ' ' << to_double(v.lower) << " <= " << name_of(k);
    if (v.upper) {
      os << " <= " << to_double(*v.upper);
    } else {
      os << " <= +inf";
    }
    os << '\n';
  }
  os << "End\n";
  return os.str();
}

}  // namespace flowsched
