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

// JSON encoding of instances and schedules.
//
//   {"kind": "cossp" | "pcsp", "m": 2,
//    "jobs": [{"r": 0, "p": [2, 1], "cost": {"kind": "weighted-flow", "w": 1}}],
//    "edges": [[0, 1]]}
//
// Rational times inside schedules are strings such as "7/6".

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"

#include "flowsched/delay_cost.hpp"
#include "flowsched/error.hpp"
#include "flowsched/model.hpp"
#include "flowsched/rational.hpp"

namespace flowsched {

using Json = nlohmann::ordered_json;

namespace io_detail {

inline std::int64_t get_int(const Json& j, const char* key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) {
    throw Error(ErrorCode::kParseError, std::string("field '") + key + "' must be an integer");
  }
  return j.at(key).get<std::int64_t>();
}

inline std::int64_t need_int(const Json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(ErrorCode::kParseError, std::string("missing field '") + key + "'");
  }
  return get_int(j, key, 0);
}

inline Time get_time(const Json& j) {
  if (j.is_number_integer()) return Time(j.get<std::int64_t>());
  if (j.is_string()) return parse_time(j.get<std::string>());
  throw Error(ErrorCode::kParseError, "time must be an integer or a \"p/q\" string");
}

}  // namespace io_detail

// `default_offset` fills r for the flow kinds when the field is absent.
inline DelayCost cost_from_json(const Json& j, std::int64_t default_offset) {
  using io_detail::get_int;
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorCode::kParseError, "cost must be an object with a 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "weighted-flow" || kind == "flow") {
    return DelayCost::weighted_flow(get_int(j, "w", 1), get_int(j, "r", default_offset));
  }
  if (kind == "weighted-power" || kind == "power") {
    return DelayCost::weighted_power(get_int(j, "w", 1), static_cast<int>(get_int(j, "p", 2)),
                                     get_int(j, "r", default_offset));
  }
  if (kind == "weighted-tardiness" || kind == "tardiness") {
    return DelayCost::weighted_tardiness(get_int(j, "w", 1), io_detail::need_int(j, "d"));
  }
  if (kind == "table") {
    std::vector<CostStep> steps;
    if (j.contains("steps")) {
      for (const auto& s : j.at("steps")) {
        if (!s.is_array() || s.size() != 2) {
          throw Error(ErrorCode::kParseError, "table steps are [t, value] pairs");
        }
        steps.push_back({s[0].get<std::int64_t>(), s[1].get<std::int64_t>()});
      }
    }
    return DelayCost::table(std::move(steps));
  }
  throw Error(ErrorCode::kParseError, "unknown cost kind '" + kind + "'");
}

inline Json cost_to_json(const DelayCost& g) {
  Json j;
  j["kind"] = std::string(to_string(g.kind()));
  switch (g.kind()) {
    case CostKind::kWeightedFlow:
      j["w"] = g.weight();
      j["r"] = g.offset();
      break;
    case CostKind::kWeightedPower:
      j["w"] = g.weight();
      j["p"] = g.exponent();
      j["r"] = g.offset();
      break;
    case CostKind::kWeightedTardiness:
      j["w"] = g.weight();
      j["d"] = g.offset();
      break;
    case CostKind::kTable: {
      Json steps = Json::array();
      for (const auto& s : g.steps()) steps.push_back(Json::array({s.time, s.value}));
      j["steps"] = steps;
      break;
    }
  }
  return j;
}

inline Json to_json(const CosspInstance& inst) {
  Json j;
  j["kind"] = "cossp";
  j["m"] = inst.m;
  Json jobs = Json::array();
  for (const auto& job : inst.jobs) {
    jobs.push_back({{"r", job.release}, {"p", job.ops}, {"cost", cost_to_json(job.cost)}});
  }
  j["jobs"] = jobs;
  j["edges"] = Json::array();
  return j;
}

inline Json to_json(const PcspInstance& inst) {
  Json j;
  j["kind"] = "pcsp";
  j["m"] = inst.m;
  Json jobs = Json::array();
  for (const auto& job : inst.jobs) {
    jobs.push_back({{"r", job.release}, {"p", job.size}, {"cost", cost_to_json(job.cost)}});
  }
  j["jobs"] = jobs;
  Json edges = Json::array();
  for (auto [a, b] : inst.edges) edges.push_back(Json::array({a, b}));
  j["edges"] = edges;
  return j;
}

inline CosspInstance cossp_from_json(const Json& j) {
  try {
    CosspInstance inst;
    inst.m = static_cast<int>(io_detail::need_int(j, "m"));
    for (const auto& jj : j.at("jobs")) {
      CosspJob job;
      job.release = io_detail::get_int(jj, "r", 0);
      const auto& p = jj.at("p");
      if (p.is_array()) {
        for (const auto& v : p) job.ops.push_back(v.get<std::int64_t>());
      } else {
        job.ops.assign(inst.m, p.get<std::int64_t>());
      }
      job.cost = jj.contains("cost") ? cost_from_json(jj.at("cost"), job.release)
                                     : DelayCost::weighted_flow(1, job.release);
      inst.jobs.push_back(std::move(job));
    }
    validate(inst);
    return inst;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

inline PcspInstance pcsp_from_json(const Json& j) {
  try {
    PcspInstance inst;
    inst.m = static_cast<int>(io_detail::need_int(j, "m"));
    for (const auto& jj : j.at("jobs")) {
      PcspJob job;
      job.release = io_detail::get_int(jj, "r", 1);
      const auto& p = jj.at("p");
      job.size = p.is_array() ? p.at(0).get<std::int64_t>() : p.get<std::int64_t>();
      job.cost = jj.contains("cost") ? cost_from_json(jj.at("cost"), job.release)
                                     : DelayCost::weighted_flow(1, job.release);
      inst.jobs.push_back(std::move(job));
    }
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) {
        inst.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
      }
    }
    validate(inst);
    return inst;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

using AnyInstance = std::variant<CosspInstance, PcspInstance>;

inline AnyInstance instance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorCode::kParseError, "instance must be an object with a 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "cossp") return cossp_from_json(j);
  if (kind == "pcsp") return pcsp_from_json(j);
  throw Error(ErrorCode::kParseError, "unknown instance kind '" + kind + "'");
}

inline Json to_json(const Schedule& s) {
  Json j;
  j["kind"] = "cossp-schedule";
  Json machines = Json::array();
  for (const auto& segs : s.machines) {
    Json arr = Json::array();
    for (const auto& seg : segs) {
      arr.push_back({{"job", seg.job}, {"from", seg.from}, {"to", seg.to}});
    }
    machines.push_back(arr);
  }
  j["machines"] = machines;
  j["completion"] = s.completion;
  return j;
}

inline Json to_json(const MigratorySchedule& s) {
  Json j;
  j["kind"] = "migratory-schedule";
  j["speed"] = format_time(s.speed);
  Json segs = Json::array();
  for (const auto& seg : s.segments) {
    segs.push_back({{"job", seg.job},
                    {"machine", seg.machine},
                    {"from", format_time(seg.from)},
                    {"to", format_time(seg.to)},
                    {"rate", format_time(seg.rate)}});
  }
  j["segments"] = segs;
  Json start = Json::array(), completion = Json::array();
  for (const auto& t : s.start) start.push_back(format_time(t));
  for (const auto& t : s.completion) completion.push_back(format_time(t));
  j["start"] = start;
  j["completion"] = completion;
  return j;
}

inline Schedule schedule_from_json(const Json& j) {
  try {
    Schedule s;
    for (const auto& arr : j.at("machines")) {
      std::vector<SlotSegment> segs;
      for (const auto& seg : arr) {
        segs.push_back({seg.at("job").get<int>(), seg.at("from").get<std::int64_t>(),
                        seg.at("to").get<std::int64_t>()});
      }
      s.machines.push_back(std::move(segs));
    }
    s.completion = j.at("completion").get<std::vector<std::int64_t>>();
    return s;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

inline MigratorySchedule migratory_from_json(const Json& j) {
  try {
    MigratorySchedule s;
    s.speed = io_detail::get_time(j.at("speed"));
    for (const auto& seg : j.at("segments")) {
      s.segments.push_back({seg.at("job").get<int>(), seg.at("machine").get<int>(),
                            io_detail::get_time(seg.at("from")), io_detail::get_time(seg.at("to")),
                            io_detail::get_time(seg.at("rate"))});
    }
    for (const auto& t : j.at("start")) s.start.push_back(io_detail::get_time(t));
    for (const auto& t : j.at("completion")) s.completion.push_back(io_detail::get_time(t));
    return s;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << text;
}

inline void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace flowsched
