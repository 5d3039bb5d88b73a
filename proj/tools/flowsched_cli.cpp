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

// flowsched: gen | solve-cossp | solve-pcsp | check | oracle | bench.
// Exit status: 0 success, 1 failed validation or solver error, 2 usage.

#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "flowsched/flowsched.hpp"

namespace {

using namespace flowsched;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& path, const Json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(path, j);
  }
}

Json report_to_json(const ValidationReport& rep) {
  Json v = Json::array();
  for (const auto& x : rep.violations) v.push_back({{"code", x.code}, {"detail", x.detail}});
  return {{"ok", rep.ok}, {"violations", v}};
}

struct GenArgs {
  std::string kind = "random-cossp";
  std::uint64_t seed = 0;
  int n = 4;
  int m = 1;
  std::int64_t pmax = 3;
  double edge_prob = 0.3;
  std::string cost = "flow";
  int k = 3;
  double graph_p = 0.3;
  std::int64_t T = -1;
  std::int64_t scale = 0;
  double gamma = 2.0;
  double epsilon = 1.0;
  std::string base;
  std::string out;
};

int run_gen(const GenArgs& a) {
  Json out;
  if (a.kind == "random-cossp") {
    out = to_json(random_cossp(a.seed, a.n, a.m, a.pmax, parse_cost_family(a.cost)));
  } else if (a.kind == "random-pcsp") {
    out = to_json(random_pcsp(a.seed, a.n, a.m, a.pmax, a.edge_prob, parse_cost_family(a.cost)));
  } else if (a.kind == "dks") {
    auto g = planted_dks_graph(a.seed, a.n, a.k, a.graph_p, a.T);
    g.scale = a.scale;
    const auto d = dks_reduction(g);
    out = to_json(d.instance);
    out["scale"] = d.scale;
    out["case1_cost"] = dks_case1_cost(g);
  } else if (a.kind == "makespan-gap") {
    if (a.base.empty()) throw Error(ErrorCode::kInvalidArgument, "makespan-gap needs --base FILE");
    const auto base = pcsp_from_json(read_json_file(a.base));
    MakespanGapParams p;
    p.gamma = a.gamma;
    p.epsilon = a.epsilon;
    p.scale = a.scale > 0 ? a.scale : 2;
    const auto mg = makespan_gap_instance(base, p);
    out = to_json(mg.instance);
    out["scale"] = mg.scale;
    out["T"] = mg.T;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown --kind '" + a.kind + "'");
  }
  emit(a.out, out);
  return kExitOk;
}

struct SolveArgs {
  std::string in;
  std::string out;
  std::string report;
  std::string mode;
  int max_rounds = 50;
  std::string cover = "greedy";
  std::string alpha = "3";
  bool expand_chains = false;
  std::string horizon = "AUTO";
};

int run_solve_cossp(const SolveArgs& a) {
  const auto inst = cossp_from_json(read_json_file(a.in));
  CosspOptions o;
  if (!a.mode.empty()) o.mode = parse_lp_mode(a.mode);
  o.max_rounds = a.max_rounds;
  if (a.cover == "exact") {
    o.cover = CoverSolver::kExact;
  } else if (a.cover != "greedy") {
    throw Error(ErrorCode::kInvalidArgument, "--cover must be greedy or exact");
  }
  const auto res = solve_cossp(inst, o);
  emit(a.out, {{"instance", to_json(inst)}, {"schedule", to_json(res.schedule)}});
  if (!a.report.empty()) {
    Json r;
    r["solver"] = "cossp";
    r["cost"] = res.cost;
    r["cover_cost"] = res.cover_cost;
    r["lp_bound"] = res.lp_bound;
    r["ratio"] = res.ratio;
    r["mode"] = std::string(to_string(res.mode));
    r["lp_rounds"] = res.lp_rounds;
    r["lp_rows"] = res.lp_rows;
    r["points"] = res.points;
    r["rectangles"] = res.rects;
    r["picked"] = res.picked;
    r["heavy"] = res.heavy;
    r["light"] = res.light;
    r["repaired"] = res.repaired;
    r["fallback"] = res.fallback;
    r["deadlines"] = res.deadlines;
    write_json_file(a.report, r);
  }
  return kExitOk;
}

int run_solve_pcsp(const SolveArgs& a) {
  const auto inst = pcsp_from_json(read_json_file(a.in));
  PcspOptions o;
  o.alpha = parse_time(a.alpha);
  if (!a.mode.empty()) o.mode = parse_lp_mode(a.mode);
  o.expand_chains = a.expand_chains;
  if (a.horizon != "AUTO" && a.horizon != "auto") o.horizon = std::stoll(a.horizon);
  const auto res = solve_pcsp(inst, o);
  emit(a.out, {{"instance", to_json(res.instance)}, {"schedule", to_json(res.schedule)}});
  if (!a.report.empty()) {
    Json r;
    r["solver"] = "pcsp";
    r["cost"] = res.cost;
    r["migratory_cost"] = res.migratory_cost;
    r["lp_bound"] = res.lp_bound;
    r["ratio"] = res.ratio;
    r["speed"] = format_time(res.speed);
    r["conversion_factor"] = format_time(res.nonmigratory.factor);
    r["interval_property"] = res.migratory.property.ok;
    r["halfpoint_completions"] = res.migratory.C;
    Json mc = Json::array();
    for (const auto& c : res.migratory.schedule.completion) mc.push_back(format_time(c));
    r["migratory_completions"] = mc;
    write_json_file(a.report, r);
  }
  return kExitOk;
}

struct CheckArgs {
  std::string in;
  std::string instance;
  std::string schedule;
  bool nonmigratory = false;
};

int run_check(const CheckArgs& a) {
  Json inst_j, sched_j;
  if (!a.in.empty()) {
    const Json j = read_json_file(a.in);
    if (!j.contains("instance") || !j.contains("schedule")) {
      throw Error(ErrorCode::kParseError, "--in expects an object with 'instance' and 'schedule'");
    }
    inst_j = j.at("instance");
    sched_j = j.at("schedule");
  } else if (!a.instance.empty() && !a.schedule.empty()) {
    inst_j = read_json_file(a.instance);
    sched_j = read_json_file(a.schedule);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "give --in FILE or both --instance and --schedule");
  }
  const AnyInstance any = instance_from_json(inst_j);
  ValidationReport rep;
  Json extra;
  if (const auto* c = std::get_if<CosspInstance>(&any)) {
    const auto s = schedule_from_json(sched_j);
    rep = validate_cossp_schedule(*c, s);
    if (rep.ok) extra["cost"] = total_cost(*c, s.completion);
  } else {
    const auto& p = std::get<PcspInstance>(any);
    const auto s = migratory_from_json(sched_j);
    rep = validate_pcsp_schedule(p, s, {a.nonmigratory});
    if (rep.ok) extra["cost"] = total_cost(p, integral_completions(s));
  }
  Json out = report_to_json(rep);
  if (!extra.is_null()) out.update(extra);
  std::cout << out.dump(2) << "\n";
  return rep.ok ? kExitOk : kExitFail;
}

struct OracleArgs {
  std::string in;
  std::string out;
  bool migratory = false;
  int n_limit = 6;
  std::int64_t horizon_limit = 40;
};

int run_oracle(const OracleArgs& a) {
  const AnyInstance any = instance_from_json(read_json_file(a.in));
  Json out;
  if (const auto* c = std::get_if<CosspInstance>(&any)) {
    CosspOracleLimits lim;
    lim.n_limit = a.n_limit;
    lim.horizon_limit = a.horizon_limit;
    const auto opt = opt_cossp(*c, lim);
    out = {{"cost", opt.cost}, {"deadlines", opt.deadlines}};
  } else {
    PcspOracleLimits lim;
    lim.n_limit = a.n_limit;
    lim.horizon_limit = a.horizon_limit;
    lim.migratory = a.migratory;
    const auto opt = opt_pcsp(std::get<PcspInstance>(any), lim);
    out = {{"cost", opt.cost}, {"horizon", opt.horizon}, {"migratory", a.migratory}};
  }
  emit(a.out, out);
  return kExitOk;
}

struct BenchArgs {
  std::string suite = "tiny";
  std::string out;
  std::string json;
  std::uint64_t seed = 0;
  bool no_timing = false;
  bool no_oracles = false;
};

int run_bench_cmd(const BenchArgs& a) {
  BenchOptions o;
  o.suite = a.suite;
  o.seed = a.seed;
  o.timing = !a.no_timing;
  o.oracles = !a.no_oracles;
  const auto rows = run_bench(o);
  const std::string csv = bench_csv(rows);
  if (a.out.empty() || a.out == "-") {
    std::cout << csv;
  } else {
    write_text_file(a.out, csv);
  }
  if (!a.json.empty()) write_json_file(a.json, bench_json(rows));
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParseError:
    case ErrorCode::kInvalidInstance:
      return kExitUsage;
    default:
      return kExitFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flowsched: delay-cost scheduling solvers, oracles and generators"};
  app.require_subcommand(1);

  GenArgs gen;
  gen.seed = default_seed();
  auto* g = app.add_subcommand("gen", "generate an instance");
  g->add_option("--kind", gen.kind, "random-cossp | random-pcsp | dks | makespan-gap")
      ->check(CLI::IsMember({"random-cossp", "random-pcsp", "dks", "makespan-gap"}));
  g->add_option("--seed", gen.seed, "RNG seed (default: FLOWSCHED_SEED or built-in)");
  g->add_option("--n", gen.n, "jobs, or graph vertices for dks");
  g->add_option("--m", gen.m, "machines");
  g->add_option("--pmax", gen.pmax, "largest operation or job size");
  g->add_option("--edge-prob", gen.edge_prob, "precedence edge probability");
  g->add_option("--cost", gen.cost, "flow | power | tardiness | table | mixed");
  g->add_option("--k", gen.k, "planted subgraph size (dks)");
  g->add_option("--graph-p", gen.graph_p, "edge probability outside the planted set (dks)");
  g->add_option("--T", gen.T, "stream end (dks, default edge count + 2)");
  g->add_option("--scale", gen.scale, "1/delta (dks default n^2, makespan-gap default 2)");
  g->add_option("--gamma", gen.gamma, "makespan gap gamma");
  g->add_option("--epsilon", gen.epsilon, "exponent with T = gamma^epsilon");
  g->add_option("--base", gen.base, "base PCSP instance (makespan-gap)");
  g->add_option("--out", gen.out, "output file (default stdout)");

  SolveArgs sc;
  auto* c = app.add_subcommand("solve-cossp", "run the covering-LP pipeline");
  c->add_option("--in", sc.in, "instance file")->required();
  c->add_option("--out", sc.out, "instance + schedule output (default stdout)");
  c->add_option("--report", sc.report, "report file");
  c->add_option("--mode", sc.mode, "rational | float (default by size)")
      ->check(CLI::IsMember({"rational", "float"}));
  c->add_option("--max-rounds", sc.max_rounds, "row-generation rounds")->check(CLI::PositiveNumber);
  c->add_option("--cover", sc.cover, "greedy | exact")->check(CLI::IsMember({"greedy", "exact"}));

  SolveArgs sp;
  auto* p = app.add_subcommand("solve-pcsp", "run the list-scheduling pipeline");
  p->add_option("--in", sp.in, "instance file")->required();
  p->add_option("--out", sp.out, "instance + schedule output (default stdout)");
  p->add_option("--report", sp.report, "report file");
  p->add_option("--alpha", sp.alpha, "list-scheduling speed, rational");
  p->add_flag("--expand-chains", sp.expand_chains, "split jobs into unit chains first");
  p->add_option("--horizon", sp.horizon, "AUTO or an integer slot count");
  p->add_option("--mode", sp.mode, "rational | float (default by size)")
      ->check(CLI::IsMember({"rational", "float"}));

  CheckArgs ck;
  auto* k = app.add_subcommand("check", "validate a schedule");
  k->add_option("--in", ck.in, "solve output with 'instance' and 'schedule'");
  k->add_option("--instance", ck.instance, "instance file");
  k->add_option("--schedule", ck.schedule, "schedule file");
  k->add_flag("--nonmigratory", ck.nonmigratory, "also require one machine per PCSP job");

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "exhaustive optimum of a tiny instance");
  o->add_option("--in", orc.in, "instance file")->required();
  o->add_option("--out", orc.out, "output file (default stdout)");
  o->add_flag("--migratory", orc.migratory, "allow migration (PCSP)");
  o->add_option("--n-limit", orc.n_limit, "largest job count");
  o->add_option("--horizon-limit", orc.horizon_limit, "largest horizon");

  BenchArgs bn;
  bn.seed = default_seed();
  auto* b = app.add_subcommand("bench", "run a benchmark suite");
  b->add_option("--suite", bn.suite, "tiny | small")->check(CLI::IsMember({"tiny", "small"}));
  b->add_option("--out", bn.out, "CSV output (default stdout)");
  b->add_option("--json", bn.json, "JSON output");
  b->add_option("--seed", bn.seed, "suite seed (default: FLOWSCHED_SEED or built-in)");
  b->add_flag("--no-timing", bn.no_timing, "write 0 in the ms column");
  b->add_flag("--no-oracles", bn.no_oracles, "skip the exhaustive rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*g) return run_gen(gen);
    if (*c) return run_solve_cossp(sc);
    if (*p) return run_solve_pcsp(sp);
    if (*k) return run_check(ck);
    if (*o) return run_oracle(orc);
    if (*b) return run_bench_cmd(bn);
  } catch (const Error& e) {
    std::cerr << "flowsched: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "flowsched: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
