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

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flowsched/error.hpp"

namespace flowsched {

enum class CostKind { kWeightedFlow, kWeightedPower, kWeightedTardiness, kTable };

inline std::string_view to_string(CostKind kind) {
  switch (kind) {
    case CostKind::kWeightedFlow: return "weighted-flow";
    case CostKind::kWeightedPower: return "weighted-power";
    case CostKind::kWeightedTardiness: return "weighted-tardiness";
    case CostKind::kTable: return "table";
  }
  return "unknown";
}

// One (time, value) step of a tabulated cost: g(t) = value for every t from
// `time` up to the next step.
struct CostStep {
  std::int64_t time = 0;
  std::int64_t value = 0;
  friend bool operator==(const CostStep&, const CostStep&) = default;
};

// Non-decreasing integer cost of completing a job at integer time t.
//
//   weighted-flow       w * max(0, t - r)
//   weighted-power      w * max(0, t - r)^p
//   weighted-tardiness  w * max(0, t - d)
//   table               value of the last step with step.time <= t, else 0
//
// The offset r of the flow kinds is stored with the cost, not taken from the
// job, so a dummy job may be released later than the time its cost counts from.
class DelayCost {
 public:
  DelayCost() = default;

  static DelayCost weighted_flow(std::int64_t weight, std::int64_t release) {
    require(weight >= 0 && release >= 0, "weighted-flow needs w >= 0, r >= 0");
    DelayCost g;
    g.kind_ = CostKind::kWeightedFlow;
    g.weight_ = weight;
    g.offset_ = release;
    return g;
  }

  static DelayCost weighted_power(std::int64_t weight, int exponent,
                                  std::int64_t release) {
    require(weight >= 0 && release >= 0 && exponent >= 1,
            "weighted-power needs w >= 0, r >= 0, p >= 1");
    DelayCost g;
    g.kind_ = CostKind::kWeightedPower;
    g.weight_ = weight;
    g.exponent_ = exponent;
    g.offset_ = release;
    return g;
  }

  static DelayCost weighted_tardiness(std::int64_t weight, std::int64_t due) {
    require(weight >= 0 && due >= 0, "weighted-tardiness needs w >= 0, d >= 0");
    DelayCost g;
    g.kind_ = CostKind::kWeightedTardiness;
    g.weight_ = weight;
    g.offset_ = due;
    return g;
  }

  static DelayCost table(std::vector<CostStep> steps) {
    for (std::size_t k = 0; k < steps.size(); ++k) {
      require(steps[k].value >= 0, "table values must be non-negative");
      if (k > 0) {
        require(steps[k].time > steps[k - 1].time,
                "table step times must be strictly increasing");
        require(steps[k].value >= steps[k - 1].value,
                "table values must be non-decreasing");
      }
    }
    DelayCost g;
    g.kind_ = CostKind::kTable;
    g.steps_ = std::move(steps);
    return g;
  }

  CostKind kind() const { return kind_; }
  std::int64_t weight() const { return weight_; }
  int exponent() const { return exponent_; }
  // r for the flow kinds, d for tardiness, 0 for tables.
  std::int64_t offset() const { return offset_; }
  const std::vector<CostStep>& steps() const { return steps_; }

  std::int64_t operator()(std::int64_t t) const {
    switch (kind_) {
      case CostKind::kWeightedFlow:
      case CostKind::kWeightedTardiness:
        return checked_mul(weight_, std::max<std::int64_t>(0, t - offset_));
      case CostKind::kWeightedPower: {
        const std::int64_t base = std::max<std::int64_t>(0, t - offset_);
        std::int64_t acc = weight_;
        for (int k = 0; k < exponent_; ++k) acc = checked_mul(acc, base);
        return acc;
      }
      case CostKind::kTable: {
        auto it = std::upper_bound(
            steps_.begin(), steps_.end(), t,
            [](std::int64_t lhs, const CostStep& s) { return lhs < s.time; });
        if (it == steps_.begin()) return 0;
        return std::prev(it)->value;
      }
    }
    return 0;
  }

  friend bool operator==(const DelayCost&, const DelayCost&) = default;

 private:
  static void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidInstance, what);
  }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
      throw Error(ErrorCode::kInvalidArgument, "delay cost overflows 64 bits");
    }
    return out;
  }

  CostKind kind_ = CostKind::kWeightedFlow;
  std::int64_t weight_ = 1;
  int exponent_ = 1;
  std::int64_t offset_ = 0;
  std::vector<CostStep> steps_;
};

inline std::int64_t eval_cost(const DelayCost& g, std::int64_t t) { return g(t); }

// Largest integer t in (lo, hi] with g(t) <= budget, by binary search over the
// monotone predicate. Returns nullopt when even g(lo + 1) exceeds the budget.
inline std::optional<std::int64_t> latest_time_within_budget(const DelayCost& g,
                                                             double budget,
                                                             std::int64_t lo,
                                                             std::int64_t hi) {
  if (lo >= hi) return std::nullopt;
  auto fits = [&](std::int64_t t) { return static_cast<double>(g(t)) <= budget; };
  if (!fits(lo + 1)) return std::nullopt;
  std::int64_t good = lo + 1;
  std::int64_t bad = hi + 1;  // exclusive
  if (fits(hi)) return hi;
  bad = hi;
  while (bad - good > 1) {
    const std::int64_t mid = good + (bad - good) / 2;
    if (fits(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

}  // namespace flowsched
