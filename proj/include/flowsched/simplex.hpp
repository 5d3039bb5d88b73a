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

// Dense bounded-variable primal simplex, two phases, Bland's rule.
//
// The number type is a template parameter: `double` runs with a pivot
// tolerance, `Exact` (GMP rationals) runs without one and terminates exactly.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "flowsched/error.hpp"
#include "flowsched/rational.hpp"

namespace flowsched {

template <class Num>
struct NumTraits;

template <>
struct NumTraits<double> {
  static constexpr double kTol = 1e-9;
  static bool pos(double x) { return x > kTol; }
  static bool neg(double x) { return x < -kTol; }
  static bool zero(double x) { return std::fabs(x) <= kTol; }
  static bool pivotable(double x) { return std::fabs(x) > 1e-7; }
  static double from(const Exact& q) { return q.convert_to<double>(); }
  static double to_double(double x) { return x; }
};

template <>
struct NumTraits<Exact> {
  static bool pos(const Exact& x) { return x > 0; }
  static bool neg(const Exact& x) { return x < 0; }
  static bool zero(const Exact& x) { return x == 0; }
  static bool pivotable(const Exact& x) { return x != 0; }
  static Exact from(const Exact& q) { return q; }
  static double to_double(const Exact& x) { return x.convert_to<double>(); }
};

enum class RowSense { kGe, kLe, kEq };

// Problem data in the form the simplex consumes: minimize c.x subject to
// A x (sense) b and lower <= x <= upper, lower always finite.
template <class Num>
struct DenseProblem {
  int n = 0;
  std::vector<Num> cost;
  std::vector<Num> lower;
  std::vector<Num> upper;
  std::vector<bool> has_upper;
  std::vector<std::vector<std::pair<int, Num>>> rows;
  std::vector<RowSense> sense;
  std::vector<Num> rhs;
};

enum class SimplexStatus { kOptimal, kInfeasible, kUnbounded };

template <class Num>
struct SimplexResult {
  SimplexStatus status = SimplexStatus::kOptimal;
  std::vector<Num> x;
  Num objective{};
  std::int64_t pivots = 0;
};

template <class Num>
class DenseSimplex {
  using Tr = NumTraits<Num>;

 public:
  explicit DenseSimplex(const DenseProblem<Num>& p, std::int64_t max_pivots = 5'000'000)
      : p_(p), max_pivots_(max_pivots) {}

  SimplexResult<Num> run() {
    setup();
    SimplexResult<Num> out;
    if (n_art_ > 0) {
      std::vector<Num> c1(cols_, Num(0));
      for (int k = first_art_; k < cols_; ++k) c1[k] = Num(1);
      if (!optimize(c1)) throw Error(ErrorCode::kInternal, "phase one cannot be unbounded");
      Num infeas(0);
      for (int k = first_art_; k < cols_; ++k) infeas += x_[k];
      if (Tr::pos(infeas)) {
        out.status = SimplexStatus::kInfeasible;
        out.pivots = pivots_;
        return out;
      }
      for (int k = first_art_; k < cols_; ++k) {
        hi_[k] = Num(0);
        has_hi_[k] = true;
        x_[k] = Num(0);
      }
    }
    std::vector<Num> c2(cols_, Num(0));
    for (int k = 0; k < p_.n; ++k) c2[k] = p_.cost[k];
    if (!optimize(c2)) {
      out.status = SimplexStatus::kUnbounded;
      out.pivots = pivots_;
      return out;
    }
    out.x.assign(x_.begin(), x_.begin() + p_.n);
    out.objective = Num(0);
    for (int k = 0; k < p_.n; ++k) out.objective += p_.cost[k] * out.x[k];
    out.pivots = pivots_;
    return out;
  }

 private:
  void setup() {
    const int m = static_cast<int>(p_.rows.size());
    rows_ = m;
    // Columns: structurals, one slack per row, then artificials as needed.
    std::vector<Num> resid(m, Num(0));
    x_.assign(p_.n + m, Num(0));
    lo_.assign(p_.n + m, Num(0));
    hi_.assign(p_.n + m, Num(0));
    has_lo_.assign(p_.n + m, true);
    has_hi_.assign(p_.n + m, false);
    for (int k = 0; k < p_.n; ++k) {
      lo_[k] = p_.lower[k];
      x_[k] = p_.lower[k];
      if (p_.has_upper[k]) {
        hi_[k] = p_.upper[k];
        has_hi_[k] = true;
      }
    }
    for (int i = 0; i < m; ++i) {
      const int s = p_.n + i;
      switch (p_.sense[i]) {
        case RowSense::kLe:
          has_hi_[s] = false;
          break;
        case RowSense::kGe:
          has_lo_[s] = false;
          has_hi_[s] = true;
          break;
        case RowSense::kEq:
          has_hi_[s] = true;
          break;
      }
      Num v = p_.rhs[i];
      for (const auto& [k, a] : p_.rows[i]) v -= a * x_[k];
      resid[i] = v;
    }
    std::vector<int> need_art;
    std::vector<bool> slack_ok(m);
    for (int i = 0; i < m; ++i) {
      const int s = p_.n + i;
      const bool ok = (!has_lo_[s] || !Tr::neg(resid[i] - lo_[s])) &&
                      (!has_hi_[s] || !Tr::pos(resid[i] - hi_[s]));
      slack_ok[i] = ok;
      if (!ok) need_art.push_back(i);
    }
    n_art_ = static_cast<int>(need_art.size());
    first_art_ = p_.n + m;
    cols_ = first_art_ + n_art_;
    x_.resize(cols_, Num(0));
    lo_.resize(cols_, Num(0));
    hi_.resize(cols_, Num(0));
    has_lo_.resize(cols_, true);
    has_hi_.resize(cols_, false);

    tab_.assign(m, std::vector<Num>(cols_, Num(0)));
    basis_.assign(m, -1);
    is_basic_.assign(cols_, false);
    int a = first_art_;
    for (int i = 0; i < m; ++i) {
      auto& row = tab_[i];
      for (const auto& [k, coef] : p_.rows[i]) row[k] += coef;
      row[p_.n + i] = Num(1);
      if (slack_ok[i]) {
        basis_[i] = p_.n + i;
        x_[p_.n + i] = resid[i];
      } else {
        // Slack rests at 0, its only finite bound here; the artificial
        // absorbs the residual with a sign that keeps it non-negative.
        x_[p_.n + i] = Num(0);
        const bool flip = Tr::neg(resid[i]);
        if (flip) {
          for (auto& v : row) v = -v;
        }
        row[a] = Num(1);
        basis_[i] = a;
        x_[a] = flip ? -resid[i] : resid[i];
        ++a;
      }
      is_basic_[basis_[i]] = true;
    }
  }

  // Returns false when the objective is unbounded below.
  bool optimize(const std::vector<Num>& c) {
    std::vector<Num> d = c;
    for (int i = 0; i < rows_; ++i) {
      const Num& cb = c[basis_[i]];
      if (Tr::zero(cb)) continue;
      const auto& row = tab_[i];
      for (int k = 0; k < cols_; ++k) {
        if (!Tr::zero(row[k])) d[k] -= cb * row[k];
      }
    }
    while (true) {
      if (++pivots_ > max_pivots_) {
        throw Error(ErrorCode::kIterationLimitExceeded, "simplex pivot limit reached");
      }
      int enter = -1;
      int dir = 0;
      for (int k = 0; k < cols_; ++k) {
        if (is_basic_[k]) continue;
        const bool can_up = !has_hi_[k] || hi_[k] > x_[k];
        const bool can_down = !has_lo_[k] || lo_[k] < x_[k];
        if (Tr::neg(d[k]) && can_up) {
          enter = k;
          dir = 1;
          break;
        }
        if (Tr::pos(d[k]) && can_down) {
          enter = k;
          dir = -1;
          break;
        }
      }
      if (enter < 0) return true;

      // Ratio test; ties leave through the smallest variable index.
      int leave_row = -1;
      Num best{};
      bool found = false;
      for (int i = 0; i < rows_; ++i) {
        const Num& t = tab_[i][enter];
        if (!Tr::pivotable(t)) continue;
        const int b = basis_[i];
        // x_b moves by -t * dir per unit step.
        const bool falls = dir > 0 ? Tr::pos(t) : Tr::neg(t);
        Num limit;
        if (falls) {
          if (!has_lo_[b]) continue;
          limit = (x_[b] - lo_[b]) / (t > 0 ? t : -t);
        } else {
          if (!has_hi_[b]) continue;
          limit = (hi_[b] - x_[b]) / (t > 0 ? t : -t);
        }
        if (Tr::neg(limit)) limit = Num(0);
        bool take = !found;
        if (found) {
          if (Tr::neg(limit - best)) {
            take = true;
          } else if (!Tr::neg(best - limit) && b < basis_[leave_row]) {
            take = true;
          }
        }
        if (take) {
          best = limit;
          leave_row = i;
          found = true;
        }
      }
      const bool flip_ok = has_hi_[enter] && has_lo_[enter];
      Num flip_len = flip_ok ? hi_[enter] - lo_[enter] : Num(0);
      if (!found && !flip_ok) return false;

      if (flip_ok && (!found || !Tr::pos(flip_len - best))) {
        const Num step = flip_len;
        for (int i = 0; i < rows_; ++i) {
          const Num& t = tab_[i][enter];
          if (Tr::zero(t)) continue;
          x_[basis_[i]] -= t * step * Num(dir);
        }
        x_[enter] = dir > 0 ? hi_[enter] : lo_[enter];
        continue;
      }

      const Num step = best;
      for (int i = 0; i < rows_; ++i) {
        const Num& t = tab_[i][enter];
        if (Tr::zero(t)) continue;
        x_[basis_[i]] -= t * step * Num(dir);
      }
      x_[enter] += step * Num(dir);
      const int out = basis_[leave_row];
      {
        const Num& t = tab_[leave_row][enter];
        const bool falls = dir > 0 ? Tr::pos(t) : Tr::neg(t);
        x_[out] = falls ? lo_[out] : hi_[out];
      }
      pivot(leave_row, enter, d);
      is_basic_[out] = false;
      is_basic_[enter] = true;
      basis_[leave_row] = enter;
    }
  }

  void pivot(int r, int k, std::vector<Num>& d) {
    auto& prow = tab_[r];
    const Num inv = Num(1) / prow[k];
    std::vector<int> nz;
    nz.reserve(cols_);
    for (int j = 0; j < cols_; ++j) {
      if (Tr::zero(prow[j])) {
        prow[j] = Num(0);
        continue;
      }
      prow[j] *= inv;
      nz.push_back(j);
    }
    prow[k] = Num(1);
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      auto& row = tab_[i];
      if (Tr::zero(row[k])) continue;
      const Num f = row[k];
      for (int j : nz) row[j] -= f * prow[j];
      row[k] = Num(0);
    }
    if (!Tr::zero(d[k])) {
      const Num f = d[k];
      for (int j : nz) d[j] -= f * prow[j];
      d[k] = Num(0);
    }
  }

  const DenseProblem<Num>& p_;
  std::int64_t max_pivots_;
  std::int64_t pivots_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  int first_art_ = 0;
  int n_art_ = 0;
  std::vector<std::vector<Num>> tab_;
  std::vector<int> basis_;
  std::vector<bool> is_basic_;
  std::vector<Num> x_, lo_, hi_;
  std::vector<bool> has_lo_, has_hi_;
};

}  // namespace flowsched
