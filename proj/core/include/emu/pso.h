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

#ifndef EMU_PSO_H_
#define EMU_PSO_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emu/connection.h"
#include "emu/constructor.h"
#include "emu/plan.h"
#include "emu/rng.h"
#include "emu/timetable.h"

namespace emu {

inline constexpr std::uint64_t kDefaultSeed = 20160417;

// Discrete PSO parameters. Velocity bounds default to -n/2 .. +n/2.
struct SwarmConfig {
  int n_particles = 30;
  int k_max = 500;
  double w_max = 0.9;
  double w_min = 0.4;
  double c1 = 2.0;  // pulls toward the swarm's global best
  double c2 = 2.0;  // pulls toward the particle's personal best
  std::optional<double> v_min;
  std::optional<double> v_max;
  std::uint64_t seed = kDefaultSeed;
  // Worker threads for particle evaluation; results do not depend on it.
  int threads = 1;
  ConstructorOptions constructor;
};

// Throws emu::Error on an inconsistent configuration.
void ValidateSwarmConfig(const SwarmConfig& config);

// Linearly decreasing inertia: w_max at k = 0, w_min at k = k_max.
double InertiaWeight(int k, const SwarmConfig& config);

struct VelocityClamp {
  double lo;
  double hi;
};

VelocityClamp DefaultVelocityClamp(int n, const SwarmConfig& config);

// Inertia-weighted velocity update, clamped. Note the pairing: c1 scales the
// pull toward the global best, c2 the pull toward the personal best.
double UpdateVelocity(double v, double x, double global_best,
                      double personal_best, double w, double c1, double c2,
                      double r1, double r2, VelocityClamp clamp);

// x + v rounded half away from zero, clamped to [1, n].
TrainId UpdatePosition(TrainId x, double v_new, int n);

// Turns a raw position vector (entries in [1, n], duplicates allowed) into a
// plan. Position d keeps its proposed train when that train is unplaced and
// legal at that point of the generating strategy; otherwise the strategy
// fills it. Maintenance follows the strategy's rules. The mileage limit may
// be exceeded (penalized by the fitness); the time limit never is.
// std::nullopt signals a dead end.
std::optional<CirculationPlan> DecodePosition(
    std::span<const TrainId> position, const TimetableInstance& instance,
    const ConnectionMatrices& matrices, Rng& rng,
    const ConstructorOptions& options = {});

struct TraceRow {
  int iter = 0;
  double global_best_fitness = 0.0;
  double feasible_fraction = 0.0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct SolveResult {
  // Best plan satisfying every model constraint.
  CirculationPlan best_plan;
  double best_fitness = 0.0;  // equals its objective
  // Swarm global best by fitness; may exceed the mileage allowance.
  CirculationPlan global_best_plan;
  double global_best_fitness = 0.0;
  std::vector<TraceRow> trace;  // row 0 is the initial swarm
  int restarts = 0;
  double wall_seconds = 0.0;
};

// Runs the swarm. Throws InfeasibleError when no particle can be built.
SolveResult Solve(const TimetableInstance& instance, const SwarmConfig& config);
SolveResult Solve(const TimetableInstance& instance,
                  const ConnectionMatrices& matrices,
                  const SwarmConfig& config);

// CSV with header "iter,global_best_fitness,feasible_fraction".
std::string RenderTrace(std::span<const TraceRow> trace);

}  // namespace emu

#endif  // EMU_PSO_H_
