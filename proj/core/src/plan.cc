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

#include "emu/plan.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "emu/error.h"

namespace emu {
namespace {

// First position whose predecessor arc carries maintenance; 0 if none.
int RotationStart(const CirculationPlan& plan) {
  const int n = plan.size();
  for (int p = 0; p < n; ++p) {
    if (plan.maint_after[(p + n - 1) % n]) return p;
  }
  return 0;
}

std::string Km(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

}  // namespace

int CirculationPlan::RotationCount() const {
  return static_cast<int>(std::count_if(maint_after.begin(), maint_after.end(),
                                        [](std::uint8_t f) { return f != 0; }));
}

AccumState Accumulate(const AccumState& prev, Minutes conn_minutes,
                      const Train& next, bool maintenance_before) {
  if (maintenance_before) return {next.mileage, next.travel_time};
  return {prev.mileage + next.mileage,
          prev.time + conn_minutes + next.travel_time};
}

std::vector<AccumState> PositionAccumulations(const CirculationPlan& plan,
                                              const TimetableInstance& instance,
                                              const ConnectionMatrices& m) {
  const int n = plan.size();
  std::vector<AccumState> acc(n);
  if (n == 0) return acc;
  const int start = RotationStart(plan);
  AccumState state;
  for (int k = 0; k < n; ++k) {
    const int d = (start + k) % n;
    const int prev = (d + n - 1) % n;
    const bool reset = k == 0 || plan.maint_after[prev];
    const Minutes conn =
        reset ? 0 : m.conn_time(plan.order[prev], plan.order[d]).value_or(0);
    state = Accumulate(state, conn, instance.train(plan.order[d]), reset);
    acc[d] = state;
  }
  return acc;
}

std::vector<Rotation> DecodeRotations(const CirculationPlan& plan,
                                      const TimetableInstance& instance,
                                      const ConnectionMatrices& m) {
  const int n = plan.size();
  std::vector<Rotation> rotations;
  if (n == 0) return rotations;
  const std::vector<AccumState> acc = PositionAccumulations(plan, instance, m);
  const int start = RotationStart(plan);
  Rotation current;
  for (int k = 0; k < n; ++k) {
    const int d = (start + k) % n;
    current.trains.push_back(plan.order[d]);
    if (plan.maint_after[d] || k == n - 1) {
      current.total_mileage = acc[d].mileage;
      current.total_time = acc[d].time;
      rotations.push_back(std::move(current));
      current = Rotation{};
    }
  }
  return rotations;
}

std::string_view FamilyTag(ConstraintFamily family) {
  switch (family) {
    case ConstraintFamily::kShape:
      return "SHAPE";
    case ConstraintFamily::kInDegree:
      return "EQ8";
    case ConstraintFamily::kOutDegree:
      return "EQ9";
    case ConstraintFamily::kCycle:
      return "CYCLE";
    case ConstraintFamily::kConnection:
      return "CONN";
    case ConstraintFamily::kMaintenance:
      return "EQ10";
    case ConstraintFamily::kMileage:
      return "EQ11";
    case ConstraintFamily::kTime:
      return "EQ12";
  }
  return "?";
}

int ValidationReport::Count(ConstraintFamily family) const {
  return static_cast<int>(std::count_if(
      violations.begin(), violations.end(),
      [family](const Violation& v) { return v.family == family; }));
}

ValidationReport Validate(const CirculationPlan& plan,
                          const TimetableInstance& instance,
                          const ConnectionMatrices& m) {
  ValidationReport report;
  auto add = [&report](ConstraintFamily f, int pos, std::string msg) {
    report.violations.push_back({f, pos, std::move(msg)});
  };
  const int n = instance.size();

  // Shape and integrality.
  if (plan.size() != n || static_cast<int>(plan.maint_after.size()) != n) {
    add(ConstraintFamily::kShape, 0,
        "plan has " + std::to_string(plan.size()) + " positions and " +
            std::to_string(plan.maint_after.size()) +
            " maintenance flags; instance has " + std::to_string(n) +
            " trains");
    return report;
  }
  bool ids_ok = true;
  for (int d = 0; d < n; ++d) {
    if (plan.order[d] < 1 || plan.order[d] > n) {
      add(ConstraintFamily::kShape, d + 1,
          "unknown train id " + std::to_string(plan.order[d]));
      ids_ok = false;
    }
    if (plan.maint_after[d] > 1) {
      add(ConstraintFamily::kShape, d + 1, "maintenance flag is not 0/1");
    }
  }
  if (!ids_ok) return report;
  if (!plan.maint_after[n - 1]) {
    add(ConstraintFamily::kShape, n,
        "loop must close through a maintenance arc after the last position");
  }

  // Induced connection digraph: one arc per position.
  std::vector<int> in_degree(n + 1, 0);
  std::vector<int> out_degree(n + 1, 0);
  std::vector<TrainId> succ(n + 1, 0);
  for (int d = 0; d < n; ++d) {
    const TrainId i = plan.order[d];
    const TrainId j = plan.order[(d + 1) % n];
    if (i == j) {
      add(ConstraintFamily::kOutDegree, d + 1,
          "train " + std::to_string(i) + " connects to itself");
      continue;
    }
    ++out_degree[i];
    ++in_degree[j];
    succ[i] = j;
  }
  bool degrees_ok = true;
  for (TrainId v = 1; v <= n; ++v) {
    if (in_degree[v] != 1) {
      add(ConstraintFamily::kInDegree, 0,
          "train " + std::to_string(v) + " has " +
              std::to_string(in_degree[v]) + " predecessors");
      degrees_ok = false;
    }
    if (out_degree[v] != 1) {
      add(ConstraintFamily::kOutDegree, 0,
          "train " + std::to_string(v) + " has " +
              std::to_string(out_degree[v]) + " successors");
      degrees_ok = false;
    }
  }
  if (degrees_ok) {
    int length = 0;
    TrainId v = plan.order[0];
    do {
      v = succ[v];
      ++length;
    } while (v != plan.order[0] && length <= n);
    if (length != n) {
      add(ConstraintFamily::kCycle, 0,
          "successor graph contains a sub-loop of length " +
              std::to_string(length));
    }
  }

  for (int d = 0; d < n; ++d) {
    const TrainId i = plan.order[d];
    const TrainId j = plan.order[(d + 1) % n];
    if (i == j) continue;
    if (plan.maint_after[d]) {
      if (!m.theta(i, j)) {
        add(ConstraintFamily::kMaintenance, d + 1,
            "maintenance between trains " + std::to_string(i) + " and " +
                std::to_string(j) + " is not at the depot station");
      }
    } else if (!m.feasible(i, j)) {
      add(ConstraintFamily::kConnection, d + 1,
          "train " + std::to_string(j) +
              " does not depart from the arrival "
              "station of train " +
              std::to_string(i));
    }
  }

  const std::vector<AccumState> acc = PositionAccumulations(plan, instance, m);
  const double km_limit = instance.params.MileageLimit();
  const double min_limit = instance.params.TimeLimit();
  for (int d = 0; d < n; ++d) {
    if (acc[d].mileage > km_limit) {
      add(ConstraintFamily::kMileage, d + 1,
          "accumulated mileage " + Km(acc[d].mileage) + " km exceeds " +
              Km(km_limit));
    }
    if (acc[d].time > min_limit) {
      add(ConstraintFamily::kTime, d + 1,
          "accumulated time " + std::to_string(acc[d].time) + " min exceeds " +
              Km(min_limit));
    }
  }
  return report;
}

double TotalConnectionTime(const CirculationPlan& plan,
                           const ConnectionMatrices& m) {
  const int n = plan.size();
  double total = 0.0;
  for (int d = 0; d < n; ++d) {
    if (plan.maint_after[d]) continue;
    const auto t = m.conn_time(plan.order[d], plan.order[(d + 1) % n]);
    if (!t) return std::numeric_limits<double>::infinity();
    total += *t;
  }
  return total;
}

double ObjectiveValue(const CirculationPlan& plan,
                      const TimetableInstance& instance,
                      const ConnectionMatrices& m) {
  const ValidationReport report = Validate(plan, instance, m);
  if (!report.ok()) {
    throw InvalidPlanError("objective requested for an invalid plan: " +
                           report.violations.front().message);
  }
  const ModelParams& p = instance.params;
  const std::vector<AccumState> acc = PositionAccumulations(plan, instance, m);
  double slack = 0.0;
  for (int d = 0; d < plan.size(); ++d) {
    if (plan.maint_after[d]) slack += p.MileageLimit() - acc[d].mileage;
  }
  return p.omega1 * TotalConnectionTime(plan, m) + p.omega2 * slack;
}

double FitnessValue(const CirculationPlan& plan,
                    const TimetableInstance& instance,
                    const ConnectionMatrices& m) {
  const ModelParams& p = instance.params;
  const double limit = p.MileageLimit();
  double second = 0.0;
  for (const Rotation& r : DecodeRotations(plan, instance, m)) {
    const bool overrun = r.total_mileage > limit;  // z_r; ties count as 0
    second +=
        overrun ? p.beta * (r.total_mileage - limit) : limit - r.total_mileage;
  }
  return p.omega1 * TotalConnectionTime(plan, m) + p.omega2 * second;
}

PlanSummary SummarizePlan(const CirculationPlan& plan,
                          const TimetableInstance& instance,
                          const ConnectionMatrices& m) {
  PlanSummary s;
  const std::vector<Rotation> rotations = DecodeRotations(plan, instance, m);
  s.rotations = plan.RotationCount();
  s.total_connection_time = TotalConnectionTime(plan, m);
  if (!rotations.empty()) {
    auto [lo_km, hi_km] =
        std::minmax_element(rotations.begin(), rotations.end(),
                            [](const Rotation& a, const Rotation& b) {
                              return a.total_mileage < b.total_mileage;
                            });
    auto [lo_t, hi_t] =
        std::minmax_element(rotations.begin(), rotations.end(),
                            [](const Rotation& a, const Rotation& b) {
                              return a.total_time < b.total_time;
                            });
    s.min_rotation_mileage = lo_km->total_mileage;
    s.max_rotation_mileage = hi_km->total_mileage;
    s.min_rotation_time = lo_t->total_time;
    s.max_rotation_time = hi_t->total_time;
  }
  s.fitness = FitnessValue(plan, instance, m);
  if (Validate(plan, instance, m).ok()) {
    s.objective = ObjectiveValue(plan, instance, m);
  }
  return s;
}

std::string RenderPlan(const CirculationPlan& plan,
                       const TimetableInstance& instance,
                       const ConnectionMatrices& m) {
  std::ostringstream out;
  const std::vector<AccumState> acc = PositionAccumulations(plan, instance, m);
  out << "cycle\n";
  for (int d = 0; d < plan.size(); ++d) {
    out << "pos " << d + 1 << " train " << plan.order[d] << " maint "
        << static_cast<int>(plan.maint_after[d]) << " accum_km "
        << Km(acc[d].mileage) << " accum_min " << acc[d].time << "\n";
  }
  const std::vector<Rotation> rotations = DecodeRotations(plan, instance, m);
  out << "rotations " << rotations.size() << "\n";
  for (std::size_t r = 0; r < rotations.size(); ++r) {
    out << "rotation " << r + 1 << ": ";
    for (std::size_t k = 0; k < rotations[r].trains.size(); ++k) {
      if (k > 0) out << ',';
      out << rotations[r].trains[k];
    }
    out << " km " << Km(rotations[r].total_mileage) << " min "
        << rotations[r].total_time << "\n";
  }
  return out.str();
}

CirculationPlan ParsePlan(std::string_view text,
                          const TimetableInstance& instance) {
  const int n = instance.size();
  CirculationPlan plan;
  bool seen_cycle = false;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  auto parse_int = [&](const std::string& s, int col) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError(line_no, col, "expected an integer, got '" + s + "'");
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind.front() == '#') continue;
    if (kind == "cycle") {
      seen_cycle = true;
    } else if (kind == "pos") {
      if (!seen_cycle) throw ParseError(line_no, 1, "'pos' before 'cycle'");
      std::string d, kw_train, id, kw_maint, flag;
      if (!(ls >> d >> kw_train >> id >> kw_maint >> flag) ||
          kw_train != "train" || kw_maint != "maint") {
        throw ParseError(line_no, 1,
                         "expected 'pos <d> train <id> maint <0|1> ...'");
      }
      const int pos = parse_int(d, 5);
      if (pos != plan.size() + 1) {
        throw ParseError(line_no, 5,
                         "positions must be listed in order; expected " +
                             std::to_string(plan.size() + 1));
      }
      const int train = parse_int(id, static_cast<int>(line.find(id)) + 1);
      if (train < 1 || train > n) {
        throw ParseError(line_no, static_cast<int>(line.find(id)) + 1,
                         "unknown train id " + id);
      }
      const int f = parse_int(flag, static_cast<int>(line.rfind(flag)) + 1);
      if (f != 0 && f != 1) {
        throw ParseError(line_no, static_cast<int>(line.rfind(flag)) + 1,
                         "maintenance flag must be 0 or 1");
      }
      plan.order.push_back(train);
      plan.maint_after.push_back(static_cast<std::uint8_t>(f));
    } else if (kind == "rotations" || kind == "rotation") {
      continue;
    } else {
      throw ParseError(line_no, 1, "unknown directive '" + kind + "'");
    }
  }
  if (!seen_cycle) throw ParseError(0, 0, "missing 'cycle' header");
  if (plan.size() != n) {
    throw ParseError(0, 0,
                     "plan lists " + std::to_string(plan.size()) +
                         " positions but the timetable has " +
                         std::to_string(n) + " trains");
  }
  return plan;
}

}  // namespace emu
