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

#ifndef EMU_PLAN_H_
#define EMU_PLAN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emu/connection.h"
#include "emu/timetable.h"

namespace emu {

// A single closed loop over all trains. order[d] is the train at position d
// (0-based here, 1-based in files); maint_after[d] == 1 puts a maintenance
// arc between position d and position d + 1 (wrapping to 0). A valid plan
// has maint_after.back() == 1, so position 0 always starts a rotation.
//
// The induced model variables are x_ij = 1 iff j directly follows i, and
// y_ij = x_ij * maint_after[position of i]. Because `order` is a single
// cycle, sub-loops are not representable.
struct CirculationPlan {
  std::vector<TrainId> order;
  std::vector<std::uint8_t> maint_after;

  int size() const { return static_cast<int>(order.size()); }
  int RotationCount() const;

  friend bool operator==(const CirculationPlan&,
                         const CirculationPlan&) = default;
};

// Mileage and elapsed time since the last maintenance.
struct AccumState {
  double mileage = 0.0;
  Minutes time = 0;

  friend bool operator==(const AccumState&, const AccumState&) = default;
};

// One step of the accumulation recursion. A maintenance before `next`
// resets the state to the train's own mileage and travel time; otherwise
// the connection time and the train are added on. `conn_minutes` is
// ignored when maintenance_before is set.
AccumState Accumulate(const AccumState& prev, Minutes conn_minutes,
                      const Train& next, bool maintenance_before);

// One EMU circulation: trains served between two maintenances.
struct Rotation {
  std::vector<TrainId> trains;
  double total_mileage = 0.0;
  Minutes total_time = 0;
};

// Accumulated state after each position. Requires every id in range.
// Infeasible non-maintenance connections contribute zero minutes (the
// validator reports them separately).
std::vector<AccumState> PositionAccumulations(const CirculationPlan& plan,
                                              const TimetableInstance& instance,
                                              const ConnectionMatrices& m);

// Cuts the loop at every maintenance arc. Rotations are returned in cycle
// order starting at position 0.
std::vector<Rotation> DecodeRotations(const CirculationPlan& plan,
                                      const TimetableInstance& instance,
                                      const ConnectionMatrices& m);

enum class ConstraintFamily {
  kShape,        // SHAPE: lengths, id range, flags, closing maintenance arc
  kInDegree,     // EQ8: exactly one predecessor per train
  kOutDegree,    // EQ9: exactly one successor per train
  kCycle,        // CYCLE: induced successor graph is one n-cycle
  kConnection,   // CONN: ordinary arcs need a feasible connection
  kMaintenance,  // EQ10: maintenance only where eligible
  kMileage,      // EQ11
  kTime,         // EQ12
};

std::string_view FamilyTag(ConstraintFamily family);

struct Violation {
  ConstraintFamily family;
  int position = 0;  // 1-based; 0 when not tied to a position
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  int Count(ConstraintFamily family) const;
};

// Exhaustive check of the full 0-1 model against a plan. Never throws.
ValidationReport Validate(const CirculationPlan& plan,
                          const TimetableInstance& instance,
                          const ConnectionMatrices& m);

// Connection time summed over ordinary (non-maintenance) arcs. Infinity if
// any such arc is infeasible.
double TotalConnectionTime(const CirculationPlan& plan,
                           const ConnectionMatrices& m);

// Model objective: omega1 * ordinary connection time + omega2 * unused
// mileage allowance at each maintenance. Throws InvalidPlanError if the plan
// fails Validate.
double ObjectiveValue(const CirculationPlan& plan,
                      const TimetableInstance& instance,
                      const ConnectionMatrices& m);

// Same first term; the second term is computed per rotation and a rotation
// over the mileage allowance pays beta * overrun instead of the slack.
// Only structural validity is required.
double FitnessValue(const CirculationPlan& plan,
                    const TimetableInstance& instance,
                    const ConnectionMatrices& m);

struct PlanSummary {
  int rotations = 0;
  double total_connection_time = 0.0;
  double min_rotation_mileage = 0.0;
  double max_rotation_mileage = 0.0;
  Minutes min_rotation_time = 0;
  Minutes max_rotation_time = 0;
  double fitness = 0.0;
  std::optional<double> objective;  // set iff the plan validates
};

PlanSummary SummarizePlan(const CirculationPlan& plan,
                          const TimetableInstance& instance,
                          const ConnectionMatrices& m);

// Plan file:
//   cycle
//   pos <d> train <id> maint <0|1> accum_km <x> accum_min <y>
//   rotations <n_r>
//   rotation <r>: <id,id,...> km <L_r> min <T_r>
std::string RenderPlan(const CirculationPlan& plan,
                       const TimetableInstance& instance,
                       const ConnectionMatrices& m);

// Reads the pos lines back; accumulation and rotation lines are derived data
// and are not trusted. Throws ParseError on syntax errors, unknown train
// ids, or a position count different from the instance size.
CirculationPlan ParsePlan(std::string_view text,
                          const TimetableInstance& instance);

}  // namespace emu

#endif  // EMU_PLAN_H_
