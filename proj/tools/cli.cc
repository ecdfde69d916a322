// Copyright 2026 The emu-roster Authors
//
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

#include "cli.h"

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "emu/connection.h"
#include "emu/error.h"
#include "emu/oracle.h"

namespace emu::cli {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("failed writing " + path);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
T Number(const std::string& key, const std::string& value) {
  T v{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error("config key '" + key + "': bad value '" + value + "'");
  }
  return v;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// Flags shared by the subcommands that read a timetable.
struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> particles;
  std::optional<int> iters;
  std::optional<int> threads;
  std::optional<int> max_restarts;
  std::optional<double> maint_prob;
  std::optional<double> lambda;
  std::optional<double> omega1;
  std::optional<double> omega2;
  std::optional<double> beta;
  std::optional<int> t_connect;

  void Register(CLI::App* app, bool swarm_flags) {
    app->add_option("--config", config_path, "key=value configuration file");
    app->add_option("--lambda", lambda, "allowed overrun fraction");
    app->add_option("--omega1", omega1, "connection time weight");
    app->add_option("--omega2", omega2, "unused mileage weight");
    app->add_option("--beta", beta, "mileage overrun penalty");
    app->add_option("--t-connect", t_connect, "minimum connection minutes");
    if (!swarm_flags) return;
    app->add_option("--seed", seed, "master random seed");
    app->add_option("--particles", particles, "swarm size");
    app->add_option("--iters", iters, "iterations");
    app->add_option("--threads", threads, "worker threads");
    app->add_option("--max-restarts", max_restarts,
                    "construction restarts before giving up");
    app->add_option("--maint-prob", maint_prob,
                    "probability of optional maintenance at the depot");
  }

  // Timetable params < config file < flags.
  void Apply(ModelParams& params, SwarmConfig& swarm) const {
    if (!config_path.empty()) {
      ApplyConfig(ParseConfigFile(ReadFile(config_path)), params, swarm);
    }
    if (seed) swarm.seed = *seed;
    if (particles) swarm.n_particles = *particles;
    if (iters) swarm.k_max = *iters;
    if (threads) swarm.threads = *threads;
    if (max_restarts) swarm.constructor.max_restarts = *max_restarts;
    if (maint_prob) swarm.constructor.maint_prob = *maint_prob;
    if (lambda) params.lambda = *lambda;
    if (omega1) params.omega1 = *omega1;
    if (omega2) params.omega2 = *omega2;
    if (beta) params.beta = *beta;
    if (t_connect) params.t_connect = *t_connect;
    ValidateParams(params);
    ValidateSwarmConfig(swarm);
  }
};

TimetableInstance LoadInstance(const std::string& path,
                               const Overrides& overrides, SwarmConfig& swarm,
                               std::ostream& err) {
  TimetableInstance instance = ParseTimetable(ReadFile(path));
  overrides.Apply(instance.params, swarm);
  for (const std::string& w : InstanceWarnings(instance)) {
    err << "warning: " << w << "\n";
  }
  return instance;
}

int RunSolve(const std::string& timetable_path, const std::string& out_path,
             std::string trace_path, const Overrides& overrides,
             std::ostream& out, std::ostream& err) {
  SwarmConfig swarm;
  const TimetableInstance instance =
      LoadInstance(timetable_path, overrides, swarm, err);
  const ConnectionMatrices matrices(instance);
  SolveResult result;
  try {
    result = Solve(instance, matrices, swarm);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  }
  const std::string plan_text =
      RenderPlan(result.best_plan, instance, matrices);
  if (out_path.empty()) {
    out << plan_text;
  } else {
    WriteFile(out_path, plan_text);
    if (trace_path.empty()) trace_path = out_path + ".trace.csv";
  }
  if (!trace_path.empty()) WriteFile(trace_path, RenderTrace(result.trace));
  const PlanSummary s = SummarizePlan(result.best_plan, instance, matrices);
  err << "rotations " << s.rotations << ", connection time "
      << Fixed(s.total_connection_time, 0) << " min, objective "
      << Fixed(s.objective.value_or(s.fitness), 4) << ", restarts "
      << result.restarts << "\n";
  return kOk;
}

int RunValidate(const std::string& timetable_path, const std::string& plan_path,
                const Overrides& overrides, std::ostream& out,
                std::ostream& err) {
  SwarmConfig unused;
  const TimetableInstance instance =
      LoadInstance(timetable_path, overrides, unused, err);
  const ConnectionMatrices matrices(instance);
  const CirculationPlan plan = ParsePlan(ReadFile(plan_path), instance);
  const ValidationReport report = Validate(plan, instance, matrices);
  for (const Violation& v : report.violations) {
    out << FamilyTag(v.family);
    if (v.position > 0) out << " pos " << v.position;
    out << ": " << v.message << "\n";
  }
  return report.ok() ? kOk : kValidationFailed;
}

int RunCompare(const std::string& timetable_path, int oracle_limit,
               const Overrides& overrides, std::ostream& out,
               std::ostream& err) {
  SwarmConfig swarm;
  const TimetableInstance instance =
      LoadInstance(timetable_path, overrides, swarm, err);
  const ConnectionMatrices matrices(instance);
  if (instance.size() > oracle_limit) {
    err << "instance too large for oracle (" << instance.size()
        << " trains, limit " << oracle_limit << ")\n";
    return kInputError;
  }
  const OracleResult oracle = BruteForce(instance, matrices, oracle_limit);
  std::optional<SolveResult> heuristic;
  try {
    heuristic = Solve(instance, matrices, swarm);
  } catch (const InfeasibleError&) {
  }
  const GapReport gap = Compare(instance, matrices, oracle, heuristic);
  auto opt = [](const std::optional<double>& v) {
    return v ? Fixed(*v, 6) : std::string("none");
  };
  out << "status " << StatusName(gap.status) << "\n";
  out << "oracle_objective " << opt(gap.oracle_objective) << "\n";
  out << "oracle_plans_enumerated " << oracle.plans_enumerated << "\n";
  out << "oracle_feasible_count " << oracle.feasible_count << "\n";
  out << "heuristic_fitness " << opt(gap.heuristic_fitness) << "\n";
  out << "heuristic_objective " << opt(gap.heuristic_objective) << "\n";
  out << "heuristic_feasible " << (gap.heuristic_feasible ? 1 : 0) << "\n";
  if (gap.status == GapReport::Status::kCompared) {
    out << "absolute_gap " << Fixed(gap.absolute_gap, 6) << "\n";
    out << "relative_gap " << Fixed(gap.relative_gap, 6) << "\n";
  }
  return kOk;
}

int RunDiagram(const std::string& timetable_path, const std::string& plan_path,
               const std::string& out_path, const Overrides& overrides,
               std::ostream& out, std::ostream& err) {
  SwarmConfig unused;
  const TimetableInstance instance =
      LoadInstance(timetable_path, overrides, unused, err);
  const ConnectionMatrices matrices(instance);
  const CirculationPlan plan = ParsePlan(ReadFile(plan_path), instance);
  const ValidationReport report = Validate(plan, instance, matrices);
  if (!report.ok()) {
    err << "invalid plan: " << FamilyTag(report.violations.front().family)
        << ": " << report.violations.front().message << "\n";
    return kInputError;
  }
  const std::string dot = RenderDot(plan, instance, matrices);
  if (out_path.empty()) {
    out << dot;
  } else {
    WriteFile(out_path, dot);
  }
  return kOk;
}

}  // namespace

ConfigMap ParseConfigFile(std::string_view text) {
  ConfigMap config;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, 1, "expected key=value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string value(Trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw ParseError(line_no, 1, "expected key=value");
    }
    config[key] = value;
  }
  return config;
}

void ApplyConfig(const ConfigMap& config, ModelParams& params,
                 SwarmConfig& swarm) {
  for (const auto& [key, value] : config) {
    if (key == "particles") {
      swarm.n_particles = Number<int>(key, value);
    } else if (key == "iters") {
      swarm.k_max = Number<int>(key, value);
    } else if (key == "w_max") {
      swarm.w_max = Number<double>(key, value);
    } else if (key == "w_min") {
      swarm.w_min = Number<double>(key, value);
    } else if (key == "c1") {
      swarm.c1 = Number<double>(key, value);
    } else if (key == "c2") {
      swarm.c2 = Number<double>(key, value);
    } else if (key == "v_min") {
      swarm.v_min = Number<double>(key, value);
    } else if (key == "v_max") {
      swarm.v_max = Number<double>(key, value);
    } else if (key == "seed") {
      swarm.seed = Number<std::uint64_t>(key, value);
    } else if (key == "threads") {
      swarm.threads = Number<int>(key, value);
    } else if (key == "max_restarts") {
      swarm.constructor.max_restarts = Number<int>(key, value);
    } else if (key == "maint_prob") {
      swarm.constructor.maint_prob = Number<double>(key, value);
    } else if (key == "l_cycle") {
      params.l_cycle = Number<double>(key, value);
    } else if (key == "t_cycle") {
      params.t_cycle = Number<int>(key, value);
    } else if (key == "lambda") {
      params.lambda = Number<double>(key, value);
    } else if (key == "t_connect") {
      params.t_connect = Number<int>(key, value);
    } else if (key == "omega1") {
      params.omega1 = Number<double>(key, value);
    } else if (key == "omega2") {
      params.omega2 = Number<double>(key, value);
    } else if (key == "beta") {
      params.beta = Number<double>(key, value);
    } else {
      throw Error("unknown config key '" + key + "'");
    }
  }
}

std::string RenderDot(const CirculationPlan& plan,
                      const TimetableInstance& instance,
                      const ConnectionMatrices& matrices) {
  std::ostringstream out;
  out << "digraph circulation {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box];\n";
  for (const TrainId id : plan.order) {
    const Train& t = instance.train(id);
    out << "  t" << id << " [label=\"" << id << ": " << t.dep_station << "→"
        << t.arr_station << "\"];\n";
  }
  const int n = plan.size();
  for (int d = 0; d < n; ++d) {
    const TrainId i = plan.order[d];
    const TrainId j = plan.order[(d + 1) % n];
    out << "  t" << i << " -> t" << j;
    if (plan.maint_after[d]) {
      out << " [style=dashed, label=\"maint\"];\n";
    } else {
      out << " [label=\"" << matrices.conn_time(i, j).value_or(0) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{
      "EMU circulation planning: connection network, particle "
      "swarm search and exact oracle",
      "emu-roster"};
  app.require_subcommand(1);

  Overrides solve_flags;
  std::string solve_timetable, solve_out, solve_trace;
  CLI::App* solve = app.add_subcommand("solve", "optimize a circulation plan");
  solve->add_option("timetable", solve_timetable, "timetable file")->required();
  solve->add_option("--out", solve_out, "plan file (default: stdout)");
  solve->add_option("--trace", solve_trace,
                    "fitness trace CSV (default: <out>.trace.csv)");
  solve_flags.Register(solve, true);

  Overrides validate_flags;
  std::string validate_timetable, validate_plan;
  CLI::App* validate =
      app.add_subcommand("validate", "check a plan against the full model");
  validate->add_option("timetable", validate_timetable)->required();
  validate->add_option("plan", validate_plan)->required();
  validate_flags.Register(validate, false);

  Overrides compare_flags;
  std::string compare_timetable;
  int oracle_limit = kDefaultOracleLimit;
  CLI::App* compare = app.add_subcommand(
      "compare", "compare the swarm against the exact oracle");
  compare->add_option("timetable", compare_timetable)->required();
  compare->add_option("--oracle-limit", oracle_limit,
                      "largest instance the oracle accepts");
  compare_flags.Register(compare, true);

  int gen_pairs = 0;
  int gen_turnbacks = 1;
  std::uint64_t gen_seed = kDefaultSeed;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic instance");
  gen->add_option("--pairs", gen_pairs, "out-and-back train pairs")->required();
  gen->add_option("--turnbacks", gen_turnbacks, "turn-back stations");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "timetable file (default: stdout)");

  Overrides diagram_flags;
  std::string diagram_timetable, diagram_plan, diagram_out;
  CLI::App* diagram =
      app.add_subcommand("diagram", "emit the connection network as DOT");
  diagram->add_option("timetable", diagram_timetable)->required();
  diagram->add_option("plan", diagram_plan)->required();
  diagram->add_option("--out", diagram_out, "DOT file (default: stdout)");
  diagram_flags.Register(diagram, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) {
      return RunSolve(solve_timetable, solve_out, solve_trace, solve_flags, out,
                      err);
    }
    if (*validate) {
      return RunValidate(validate_timetable, validate_plan, validate_flags, out,
                         err);
    }
    if (*compare) {
      return RunCompare(compare_timetable, oracle_limit, compare_flags, out,
                        err);
    }
    if (*gen) {
      const std::string text =
          RenderTimetable(GenerateInstance(gen_pairs, gen_turnbacks, gen_seed));
      if (gen_out.empty()) {
        out << text;
      } else {
        WriteFile(gen_out, text);
      }
      return kOk;
    }
    if (*diagram) {
      return RunDiagram(diagram_timetable, diagram_plan, diagram_out,
                        diagram_flags, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace emu::cli
