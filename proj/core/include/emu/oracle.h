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

#ifndef EMU_ORACLE_H_
#define EMU_ORACLE_H_

#include <cstdint>
#include <optional>
#include <string>

#include "emu/connection.h"
#include "emu/plan.h"
#include "emu/pso.h"
#include "emu/timetable.h"

namespace emu {

inline constexpr int kDefaultOracleLimit = 10;

struct OracleResult {
  std::optional<CirculationPlan> best_plan;
  std::optional<double> best_objective;
  // Complete loops reached by the search (closing arc not yet checked).
  std::int64_t plans_enumerated = 0;
  // Distinct feasible solutions: a loop together with its set of
  // maintenance arcs, counted once regardless of where the plan starts.
  std::int64_t feasible_count = 0;
};

// Exact minimum of the model objective by depth-first enumeration of every
// loop and every legal maintenance placement, pruned on infeasible
// connections and on the mileage and time limits. Each solution is
// enumerated once, starting at its lowest-id rotation start. Ties go to the
// lexicographically smallest (order, maint_after).
// Throws TooLargeError when instance.size() > n_limit.
OracleResult BruteForce(const TimetableInstance& instance,
                        const ConnectionMatrices& matrices,
                        int n_limit = kDefaultOracleLimit);

struct GapReport {
  enum class Status {
    kCompared,                // both sides produced a feasible plan
    kConsistentlyInfeasible,  // neither side did
    kHeuristicInfeasible,     // the oracle found a plan, the heuristic not
    kOracleInfeasible,        // heuristic plan exists but the oracle found none
  };
  Status status = Status::kCompared;
  std::optional<double> oracle_objective;
  std::optional<double> heuristic_objective;
  std::optional<double> heuristic_fitness;
  bool heuristic_feasible = false;
  double absolute_gap = 0.0;
  double relative_gap = 0.0;
};

// (heuristic - oracle) / max(oracle, 1e-9).
double RelativeGap(double heuristic, double oracle);

// `heuristic` is std::nullopt when the solver reported infeasibility.
GapReport Compare(const TimetableInstance& instance,
                  const ConnectionMatrices& matrices,
                  const OracleResult& oracle,
                  const std::optional<SolveResult>& heuristic);

std::string_view StatusName(GapReport::Status status);

}  // namespace emu

#endif  // EMU_ORACLE_H_
