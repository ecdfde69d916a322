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

#include "emu/constructor.h"

#include <algorithm>
#include <span>

#include "emu/error.h"

namespace emu {

ConstructorState::ConstructorState(const TimetableInstance& instance,
                                   const ConnectionMatrices& matrices)
    : instance_(&instance),
      matrices_(&matrices),
      remaining_(instance.size() + 1, 1) {
  remaining_[0] = 0;
  for (const Train& t : instance.trains) {
    if (instance.IsMaintStation(t.dep_station)) {
      depot_departures_.push_back(t.id);
    }
  }
  partial_.order.reserve(instance.size());
  partial_.maint_after.reserve(instance.size());
}

std::optional<TrainId> ConstructorState::last() const {
  if (partial_.order.empty()) return std::nullopt;
  return partial_.order.back();
}

bool ConstructorState::AtDepot() const {
  const auto prev = last();
  return prev && instance_->IsMaintStation(instance_->train(*prev).arr_station);
}

AccumState ConstructorState::Preview(TrainId id,
                                     bool maintenance_before) const {
  const auto prev = last();
  if (!prev || maintenance_before) {
    return Accumulate(accum_, 0, instance_->train(id), true);
  }
  return Accumulate(accum_, matrices_->conn_time(*prev, id).value_or(0),
                    instance_->train(id), false);
}

bool ConstructorState::WithinLimits(TrainId id) const {
  const AccumState next = Preview(id, false);
  const ModelParams& p = instance_->params;
  return next.mileage <= p.MileageLimit() && next.time <= p.TimeLimit();
}

bool ConstructorState::WithinTimeLimit(TrainId id) const {
  return Preview(id, false).time <= instance_->params.TimeLimit();
}

void ConstructorState::Place(TrainId id, bool maintenance_before) {
  const bool reset = partial_.order.empty() || maintenance_before;
  accum_ = Preview(id, reset);
  if (!partial_.order.empty()) partial_.maint_after.back() = reset ? 1 : 0;
  partial_.order.push_back(id);
  partial_.maint_after.push_back(0);
  remaining_[id] = 0;
  std::erase(depot_departures_, id);
}

bool ConstructorState::Close() {
  if (!complete() || partial_.order.empty()) return false;
  if (!matrices_->theta(partial_.order.back(), partial_.order.front())) {
    return false;
  }
  partial_.maint_after.back() = 1;
  return true;
}

StepCandidates ComputeStepCandidates(const ConstructorState& state) {
  StepCandidates c;
  const TimetableInstance& instance = state.instance();
  const TrainId prev = *state.last();
  for (const Train& t : instance.trains) {
    if (!state.remaining(t.id) || !state.matrices().feasible(prev, t.id)) {
      continue;
    }
    if (instance.IsMaintStation(t.arr_station)) {
      c.to_depot.push_back(t.id);
    } else if (state.WithinLimits(t.id)) {
      c.away.push_back(t.id);
    }
  }
  return c;
}

void PlaceAfterDepot(ConstructorState& state, TrainId id, Rng& rng,
                     double maint_prob) {
  bool maintenance = true;
  if (state.WithinLimits(id)) maintenance = rng.UniformReal() < maint_prob;
  state.Place(id, maintenance);
}

bool FillNextPosition(ConstructorState& state, Rng& rng,
                      const ConstructorOptions& options, LimitPolicy policy) {
  if (state.position() == 0 || state.AtDepot()) {
    const std::vector<TrainId>& v0 = state.depot_departures();
    if (v0.empty()) return false;
    const TrainId pick = v0[rng.UniformIndex(v0.size())];
    if (state.position() == 0) {
      state.Place(pick, true);
    } else {
      PlaceAfterDepot(state, pick, rng, options.maint_prob);
    }
    return true;
  }

  const StepCandidates c = ComputeStepCandidates(state);
  if (!c.away.empty()) {
    state.Place(c.away[rng.UniformIndex(c.away.size())], false);
    return true;
  }
  std::vector<TrainId> pool;
  std::copy_if(c.to_depot.begin(), c.to_depot.end(), std::back_inserter(pool),
               [&](TrainId id) { return state.WithinLimits(id); });
  if (pool.empty() && policy == LimitPolicy::kRelaxed) {
    std::copy_if(c.to_depot.begin(), c.to_depot.end(), std::back_inserter(pool),
                 [&](TrainId id) { return state.WithinTimeLimit(id); });
  }
  if (pool.empty()) return false;
  state.Place(pool[rng.UniformIndex(pool.size())], false);
  return true;
}

CirculationPlan Construct(const TimetableInstance& instance,
                          const ConnectionMatrices& matrices, Rng& rng,
                          const ConstructorOptions& options, int* restarts) {
  const ModelParams& p = instance.params;
  for (const Train& t : instance.trains) {
    if (t.mileage > p.MileageLimit() || t.travel_time > p.TimeLimit()) {
      throw InfeasibleError("train " + std::to_string(t.id) +
                            " alone exceeds a maintenance cycle limit");
    }
  }
  for (int attempt = 0; attempt <= options.max_restarts; ++attempt) {
    ConstructorState state(instance, matrices);
    bool ok = true;
    while (ok && !state.complete()) {
      ok = FillNextPosition(state, rng, options, LimitPolicy::kStrict);
    }
    if (ok && state.Close()) {
      if (restarts) *restarts = attempt;
      return state.partial();
    }
  }
  if (restarts) *restarts = options.max_restarts + 1;
  throw InfeasibleError("construction dead-ended in all " +
                        std::to_string(options.max_restarts + 1) + " attempts");
}

}  // namespace emu
