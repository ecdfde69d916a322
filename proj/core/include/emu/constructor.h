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

#ifndef EMU_CONSTRUCTOR_H_
#define EMU_CONSTRUCTOR_H_

#include <optional>
#include <vector>

#include "emu/connection.h"
#include "emu/plan.h"
#include "emu/rng.h"
#include "emu/timetable.h"

namespace emu {

struct ConstructorOptions {
  int max_restarts = 100;
  // Probability of taking an optional maintenance at the depot station.
  double maint_prob = 0.5;
};

// How the choice among trains returning to the depot treats the cycle
// limits. kStrict never exceeds either limit (dead end instead); kRelaxed
// prefers trains within both limits, then trains within the time limit,
// letting the mileage limit be exceeded (the fitness penalizes it).
enum class LimitPolicy { kStrict, kRelaxed };

// Partial single-loop network under construction. Positions are filled in
// order; the loop is closed through the depot once every train is placed.
class ConstructorState {
 public:
  ConstructorState(const TimetableInstance& instance,
                   const ConnectionMatrices& matrices);

  const TimetableInstance& instance() const { return *instance_; }
  const ConnectionMatrices& matrices() const { return *matrices_; }

  // 0-based index of the next position to fill.
  int position() const { return partial_.size(); }
  bool complete() const { return position() == instance_->size(); }
  const AccumState& accum() const { return accum_; }
  const CirculationPlan& partial() const { return partial_; }
  bool remaining(TrainId id) const { return remaining_[id] != 0; }
  // Unplaced trains departing from the depot station, ascending id.
  const std::vector<TrainId>& depot_departures() const {
    return depot_departures_;
  }
  std::optional<TrainId> last() const;
  // True when the last placed train arrives at the depot station.
  bool AtDepot() const;

  // State after appending `id`, without mutating.
  AccumState Preview(TrainId id, bool maintenance_before) const;
  // Both cycle limits hold after appending `id` without maintenance.
  bool WithinLimits(TrainId id) const;
  bool WithinTimeLimit(TrainId id) const;

  // Appends `id`. With maintenance_before, the arc from the previous train
  // becomes a maintenance arc (ignored for position 0, which always follows
  // the closing maintenance arc).
  void Place(TrainId id, bool maintenance_before);

  // Marks the closing arc as maintenance. Returns false if the last train
  // cannot hand over to the first one at the depot station.
  bool Close();

 private:
  const TimetableInstance* instance_;
  const ConnectionMatrices* matrices_;
  std::vector<char> remaining_;  // indexed by id
  std::vector<TrainId> depot_departures_;
  AccumState accum_;
  CirculationPlan partial_;
};

// Candidate successors when the previous train arrived away from the depot.
struct StepCandidates {
  // Connectable trains arriving away from the depot with both limits intact.
  std::vector<TrainId> away;
  // Connectable trains arriving at the depot, limits not applied.
  std::vector<TrainId> to_depot;
};

// Requires a placed train that did not arrive at the depot station.
StepCandidates ComputeStepCandidates(const ConstructorState& state);

// Places `id` (which must depart from the depot station) after a train
// arriving at the depot. Maintenance is taken at random with probability
// maint_prob when both limits would still hold, and compulsorily otherwise.
void PlaceAfterDepot(ConstructorState& state, TrainId id, Rng& rng,
                     double maint_prob);

// Fills the next position with the randomized generating strategy: a random
// depot departure at the start or after a depot arrival, otherwise a random
// train that stays away from the depot if one fits, else one returning to
// it. Returns false on a dead end.
bool FillNextPosition(ConstructorState& state, Rng& rng,
                      const ConstructorOptions& options, LimitPolicy policy);

// Builds a complete plan satisfying every model constraint, restarting on
// dead ends. `restarts`, when given, receives the number of failed attempts.
// Throws InfeasibleError when a train alone exceeds a cycle limit or when
// max_restarts + 1 attempts all dead-end.
CirculationPlan Construct(const TimetableInstance& instance,
                          const ConnectionMatrices& matrices, Rng& rng,
                          const ConstructorOptions& options = {},
                          int* restarts = nullptr);

}  // namespace emu

#endif  // EMU_CONSTRUCTOR_H_
