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

#include "emu/pso.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "emu/error.h"

namespace emu {
namespace {

struct Particle {
  std::vector<TrainId> position;
  std::vector<double> velocity;
  CirculationPlan plan;
  double fitness = std::numeric_limits<double>::infinity();
  bool valid = false;
  CirculationPlan best_plan;
  double best_fitness = std::numeric_limits<double>::infinity();
  int restarts = 0;  // during the most recent update
};

// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
// handled exactly once and fn must only touch state owned by index i.
void ParallelFor(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([t, threads, count, &fn] {
      for (int i = t; i < count; i += threads) fn(i);
    });
  }
}

void Score(Particle& p, const TimetableInstance& instance,
           const ConnectionMatrices& m) {
  p.fitness = FitnessValue(p.plan, instance, m);
  p.valid = Validate(p.plan, instance, m).ok();
}

}  // namespace

void ValidateSwarmConfig(const SwarmConfig& c) {
  if (c.n_particles < 1) throw Error("n_particles must be >= 1");
  if (c.k_max < 1) throw Error("k_max must be >= 1");
  if (c.w_max < c.w_min) throw Error("w_max must be >= w_min");
  if (c.c1 < 0 || c.c2 < 0) throw Error("learning factors must be >= 0");
  if (c.v_min && c.v_max && *c.v_min > *c.v_max) {
    throw Error("v_min must be <= v_max");
  }
  if (c.threads < 1) throw Error("threads must be >= 1");
  if (c.constructor.max_restarts < 0) throw Error("max_restarts must be >= 0");
  if (!(c.constructor.maint_prob >= 0 && c.constructor.maint_prob <= 1)) {
    throw Error("maint_prob must lie in [0, 1]");
  }
}

double InertiaWeight(int k, const SwarmConfig& config) {
  return config.w_max -
         (config.w_max - config.w_min) * static_cast<double>(k) / config.k_max;
}

VelocityClamp DefaultVelocityClamp(int n, const SwarmConfig& config) {
  return {config.v_min.value_or(-n / 2.0), config.v_max.value_or(n / 2.0)};
}

double UpdateVelocity(double v, double x, double global_best,
                      double personal_best, double w, double c1, double c2,
                      double r1, double r2, VelocityClamp clamp) {
  const double next =
      w * v + c1 * r1 * (global_best - x) + c2 * r2 * (personal_best - x);
  return std::clamp(next, clamp.lo, clamp.hi);
}

TrainId UpdatePosition(TrainId x, double v_new, int n) {
  const double moved = std::round(static_cast<double>(x) + v_new);
  return static_cast<TrainId>(std::clamp(moved, 1.0, static_cast<double>(n)));
}

std::optional<CirculationPlan> DecodePosition(
    std::span<const TrainId> position, const TimetableInstance& instance,
    const ConnectionMatrices& matrices, Rng& rng,
    const ConstructorOptions& options) {
  const int n = instance.size();
  ConstructorState state(instance, matrices);
  for (int d = 0; d < n; ++d) {
    const TrainId proposed =
        d < static_cast<int>(position.size()) ? position[d] : 0;
    bool accepted = false;
    if (proposed >= 1 && proposed <= n && state.remaining(proposed)) {
      const Train& t = instance.train(proposed);
      if (d == 0 || state.AtDepot()) {
        if (instance.IsMaintStation(t.dep_station)) {
          if (d == 0) {
            state.Place(proposed, true);
          } else {
            PlaceAfterDepot(state, proposed, rng, options.maint_prob);
          }
          accepted = true;
        }
      } else if (matrices.feasible(*state.last(), proposed)) {
        const bool ok = instance.IsMaintStation(t.arr_station)
                            ? state.WithinTimeLimit(proposed)
                            : state.WithinLimits(proposed);
        if (ok) {
          state.Place(proposed, false);
          accepted = true;
        }
      }
    }
    if (!accepted &&
        !FillNextPosition(state, rng, options, LimitPolicy::kRelaxed)) {
      return std::nullopt;
    }
  }
  if (!state.Close()) return std::nullopt;
  return state.partial();
}

SolveResult Solve(const TimetableInstance& instance,
                  const SwarmConfig& config) {
  return Solve(instance, ConnectionMatrices(instance), config);
}

SolveResult Solve(const TimetableInstance& instance,
                  const ConnectionMatrices& matrices,
                  const SwarmConfig& config) {
  ValidateSwarmConfig(config);
  const auto started = std::chrono::steady_clock::now();
  const int n = instance.size();
  const int n_particles = config.n_particles;
  const VelocityClamp clamp = DefaultVelocityClamp(n, config);

  SolveResult result;
  result.best_fitness = std::numeric_limits<double>::infinity();
  result.global_best_fitness = std::numeric_limits<double>::infinity();
  const CirculationPlan* global_best = nullptr;

  // Initial swarm from the generating strategy.
  std::vector<Particle> swarm(n_particles);
  std::vector<char> built(n_particles, 0);
  ParallelFor(n_particles, config.threads, [&](int m) {
    Particle& p = swarm[m];
    Rng rng(DeriveSeed(config.seed, static_cast<std::uint64_t>(m), 0));
    try {
      p.plan =
          Construct(instance, matrices, rng, config.constructor, &p.restarts);
    } catch (const InfeasibleError&) {
      p.restarts = config.constructor.max_restarts + 1;
      return;
    }
    built[m] = 1;
    p.velocity.resize(n);
    for (double& v : p.velocity) v = rng.UniformReal(clamp.lo, clamp.hi);
    Score(p, instance, matrices);
  });
  const auto first_built = std::find(built.begin(), built.end(), 1);
  if (first_built == built.end()) {
    throw InfeasibleError("no particle could build a feasible circulation");
  }
  const Particle& donor = swarm[first_built - built.begin()];
  for (int m = 0; m < n_particles; ++m) {
    if (!built[m]) {
      const int restarts = swarm[m].restarts;
      swarm[m] = donor;
      swarm[m].restarts = restarts;
    }
  }

  auto reduce = [&](int iter) {
    int feasible = 0;
    for (Particle& p : swarm) {
      result.restarts += p.restarts;
      p.restarts = 0;
      if (p.fitness < p.best_fitness) {
        p.best_fitness = p.fitness;
        p.best_plan = p.plan;
      }
      if (p.valid) {
        ++feasible;
        if (p.fitness < result.best_fitness) {
          result.best_fitness = p.fitness;
          result.best_plan = p.plan;
        }
      }
    }
    for (const Particle& p : swarm) {
      if (p.best_fitness < result.global_best_fitness) {
        result.global_best_fitness = p.best_fitness;
        global_best = &p.best_plan;
      }
    }
    if (global_best) result.global_best_plan = *global_best;
    global_best = nullptr;
    result.trace.push_back({iter, result.global_best_fitness,
                            static_cast<double>(feasible) / n_particles});
  };

  for (Particle& p : swarm) p.position = p.plan.order;
  reduce(0);

  for (int k = 1; k <= config.k_max; ++k) {
    const double w = InertiaWeight(k, config);
    const std::vector<TrainId> g = result.global_best_plan.order;
    ParallelFor(n_particles, config.threads, [&](int m) {
      Particle& p = swarm[m];
      Rng rng(DeriveSeed(config.seed, static_cast<std::uint64_t>(m),
                         static_cast<std::uint64_t>(k)));
      for (int d = 0; d < n; ++d) {
        const double r1 = rng.UniformReal();
        const double r2 = rng.UniformReal();
        p.velocity[d] = UpdateVelocity(p.velocity[d], p.position[d], g[d],
                                       p.best_plan.order[d], w, config.c1,
                                       config.c2, r1, r2, clamp);
        p.position[d] = UpdatePosition(p.position[d], p.velocity[d], n);
      }
      std::optional<CirculationPlan> plan = DecodePosition(
          p.position, instance, matrices, rng, config.constructor);
      if (!plan) {
        int restarts = 0;
        try {
          plan =
              Construct(instance, matrices, rng, config.constructor, &restarts);
        } catch (const InfeasibleError&) {
          // Keep the previous plan.
        }
        p.restarts += 1 + restarts;
      }
      if (plan) {
        p.plan = std::move(*plan);
        Score(p, instance, matrices);
      }
      p.position = p.plan.order;
    });
    reduce(k);
  }

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return result;
}

std::string RenderTrace(std::span<const TraceRow> trace) {
  std::ostringstream out;
  out << "iter,global_best_fitness,feasible_fraction\n";
  char buf[96];
  for (const TraceRow& row : trace) {
    std::snprintf(buf, sizeof(buf), "%d,%.6f,%.4f\n", row.iter,
                  row.global_best_fitness, row.feasible_fraction);
    out << buf;
  }
  return out.str();
}

}  // namespace emu
