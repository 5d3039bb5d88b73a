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

// Benchmark suites and their CSV / JSON reports.

#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "flowsched/cossp.hpp"
#include "flowsched/error.hpp"
#include "flowsched/gen.hpp"
#include "flowsched/oracle.hpp"
#include "flowsched/pcsp.hpp"
#include "flowsched/io.hpp"

namespace flowsched {

inline constexpr std::uint64_t kDefaultSeed = 20261014;

// FLOWSCHED_SEED, when set to an unsigned integer, replaces the default.
inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("FLOWSCHED_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return kDefaultSeed;
}

struct BenchRow {
  std::string id;
  int n = 0;
  int m = 0;
  double P = 1.0;
  std::string solver;
  std::int64_t cost = 0;
  double lp_bound = 0.0;
  double ratio = 0.0;
  std::string speed;  // empty for COSSP rows
  double ms = 0.0;
  std::string error;  // error code when the solver failed
};

struct BenchOptions {
  std::string suite = "tiny";
  std::uint64_t seed = kDefaultSeed;
  bool timing = true;
  bool oracles = true;
};

struct SuiteEntry {
  std::string id;
  bool cossp = true;
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  std::int64_t pmax = 1;
  double edge_prob = 0.0;
  CostFamily family = CostFamily::kFlow;
};

inline std::vector<SuiteEntry> suite_entries(const std::string& suite, std::uint64_t seed) {
  std::vector<SuiteEntry> out;
  auto add = [&](bool cossp, int count, int n, int m, std::int64_t pmax, double ep,
                 CostFamily fam) {
    for (int k = 0; k < count; ++k) {
      SuiteEntry e;
      e.cossp = cossp;
      e.seed = seed + out.size() * 7919u;
      e.n = n;
      e.m = m;
      e.pmax = pmax;
      e.edge_prob = ep;
      e.family = fam;
      std::ostringstream id;
      id << (cossp ? "cossp" : "pcsp") << "-n" << n << "-m" << m << "-" << to_string(fam) << "-"
         << k;
      e.id = id.str();
      out.push_back(e);
    }
  };
  if (suite == "tiny") {
    add(true, 3, 3, 1, 3, 0.0, CostFamily::kFlow);
    add(true, 3, 4, 2, 3, 0.0, CostFamily::kMixed);
    add(false, 3, 4, 1, 2, 0.3, CostFamily::kFlow);
    add(false, 3, 5, 2, 2, 0.3, CostFamily::kFlow);
  } else if (suite == "small") {
    add(true, 4, 6, 2, 4, 0.0, CostFamily::kFlow);
    add(true, 4, 8, 3, 4, 0.0, CostFamily::kMixed);
    add(true, 2, 10, 3, 3, 0.0, CostFamily::kPower);
    add(false, 4, 6, 2, 3, 0.3, CostFamily::kFlow);
    add(false, 4, 8, 3, 3, 0.2, CostFamily::kMixed);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + suite + "' (tiny, small)");
  }
  return out;
}

inline std::vector<BenchRow> run_bench(const BenchOptions& opts) {
  std::vector<BenchRow> rows;
  for (const auto& e : suite_entries(opts.suite, opts.seed)) {
    auto timed = [&](BenchRow row, auto&& body) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        body(row);
      } catch (const Error& err) {
        row.error = std::string(to_string(err.code()));
      }
      const auto t1 = std::chrono::steady_clock::now();
      row.ms = opts.timing ? std::chrono::duration<double, std::milli>(t1 - t0).count() : 0.0;
      rows.push_back(std::move(row));
    };
    if (e.cossp) {
      const auto inst = random_cossp(e.seed, e.n, e.m, e.pmax, e.family);
      BenchRow base;
      base.id = e.id;
      base.n = inst.n();
      base.m = inst.m;
      base.P = inst.ratio_p();
      base.solver = "cossp";
      timed(base, [&](BenchRow& r) {
        const auto res = solve_cossp(inst);
        r.cost = res.cover_cost;
        r.lp_bound = res.lp_bound;
        r.ratio = res.ratio;
      });
      if (opts.oracles && inst.n() <= 4) {
        base.solver = "cossp-opt";
        timed(base, [&](BenchRow& r) {
          const auto opt = opt_cossp(inst);
          r.cost = opt.cost;
        });
      }
    } else {
      const auto inst = random_pcsp(e.seed, e.n, e.m, e.pmax, e.edge_prob, e.family);
      BenchRow base;
      base.id = e.id;
      base.n = inst.n();
      base.m = inst.m;
      base.P = inst.ratio_p();
      base.solver = "pcsp";
      timed(base, [&](BenchRow& r) {
        const auto res = solve_pcsp(inst);
        r.cost = res.cost;
        r.lp_bound = res.lp_bound;
        r.ratio = res.ratio;
        r.speed = format_time(res.speed);
      });
      if (opts.oracles && inst.n() <= 5 && inst.m <= 2) {
        base.solver = "pcsp-opt";
        timed(base, [&](BenchRow& r) {
          r.cost = opt_pcsp(inst).cost;
          r.speed = "1";
        });
      }
    }
  }
  return rows;
}

inline constexpr std::string_view kBenchHeader = "id,n,m,P,solver,cost,lp_bound,ratio,speed,ms";

// A failed row leaves cost, lp_bound and ratio empty and puts the error code
// in the solver column as solver:code.
inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << kBenchHeader << '\n';
  os << std::fixed;
  for (const auto& r : rows) {
    os << r.id << ',' << r.n << ',' << r.m << ',' << std::setprecision(4) << r.P << ',';
    if (!r.error.empty()) {
      os << r.solver << ':' << r.error << ",,,,";
    } else {
      os << r.solver << ',' << r.cost << ',' << std::setprecision(6) << r.lp_bound << ','
         << std::setprecision(6) << r.ratio << ',';
    }
    os << r.speed << ',' << std::setprecision(3) << r.ms << '\n';
  }
  return os.str();
}

inline Json bench_json(const std::vector<BenchRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["id"] = r.id;
    j["n"] = r.n;
    j["m"] = r.m;
    j["P"] = r.P;
    j["solver"] = r.solver;
    if (r.error.empty()) {
      j["cost"] = r.cost;
      j["lp_bound"] = r.lp_bound;
      j["ratio"] = r.ratio;
    } else {
      j["error"] = r.error;
    }
    if (!r.speed.empty()) j["speed"] = r.speed;
    j["ms"] = r.ms;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace flowsched
