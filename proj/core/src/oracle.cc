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

#include "emu/oracle.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "emu/error.h"

namespace emu {
namespace {

constexpr double kTieTolerance = 1e-9;

class Search {
 public:
  Search(const TimetableInstance& instance, const ConnectionMatrices& m)
      : instance_(instance),
        m_(m),
        n_(instance.size()),
        km_limit_(instance.params.MileageLimit()),
        min_limit_(instance.params.TimeLimit()),
        used_(n_ + 1, 0) {}

  OracleResult Run() {
    for (const Train& t : instance_.trains) {
      if (!instance_.IsMaintStation(t.dep_station)) continue;
      start_ = t.id;
      const AccumState acc = Accumulate({}, 0, t, true);
      if (!Within(acc)) continue;
      order_.assign(1, t.id);
      maint_.assign(1, 0);
      used_[t.id] = 1;
      Extend(acc, 0.0);
      used_[t.id] = 0;
    }
    if (best_) {
      result_.best_objective = ObjectiveValue(*best_, instance_, m_);
      result_.best_plan = std::move(best_);
    }
    return result_;
  }

 private:
  bool Within(const AccumState& acc) const {
    return acc.mileage <= km_limit_ && acc.time <= min_limit_;
  }

  void Extend(const AccumState& acc, double cost) {
    const ModelParams& p = instance_.params;
    const TrainId last = order_.back();
    if (static_cast<int>(order_.size()) == n_) {
      ++result_.plans_enumerated;
      if (n_ < 2 || !m_.theta(last, start_)) return;
      ++result_.feasible_count;
      maint_.back() = 1;
      Offer(cost + p.omega2 * (km_limit_ - acc.mileage));
      maint_.back() = 0;
      return;
    }
    for (TrainId j = 1; j <= n_; ++j) {
      if (used_[j]) continue;
      const Train& next = instance_.train(j);
      if (const auto t = m_.conn_time(last, j)) {
        const AccumState after = Accumulate(acc, *t, next, false);
        if (Within(after)) {
          Push(j, false);
          Extend(after, cost + p.omega1 * *t);
          Pop();
        }
      }
      // A maintenance arc starts a rotation; only rotation starts above the
      // search's first train are allowed, so each solution appears once.
      if (j > start_ && m_.theta(last, j)) {
        const AccumState after = Accumulate(acc, 0, next, true);
        if (Within(after)) {
          Push(j, true);
          Extend(after, cost + p.omega2 * (km_limit_ - acc.mileage));
          Pop();
        }
      }
    }
  }

  void Push(TrainId j, bool maintenance_before) {
    maint_.back() = maintenance_before ? 1 : 0;
    order_.push_back(j);
    maint_.push_back(0);
    used_[j] = 1;
  }

  void Pop() {
    used_[order_.back()] = 0;
    order_.pop_back();
    maint_.pop_back();
    maint_.back() = 0;
  }

  void Offer(double objective) {
    const bool better =
        !best_ || objective < best_objective_ - kTieTolerance ||
        (objective <= best_objective_ + kTieTolerance &&
         std::tie(order_, maint_) < std::tie(best_->order, best_->maint_after));
    if (better) {
      best_objective_ = objective;
      best_ = CirculationPlan{order_, maint_};
    }
  }

  const TimetableInstance& instance_;
  const ConnectionMatrices& m_;
  const int n_;
  const double km_limit_;
  const double min_limit_;
  std::vector<char> used_;
  std::vector<TrainId> order_;
  std::vector<std::uint8_t> maint_;
  TrainId start_ = 0;
  std::optional<CirculationPlan> best_;
  double best_objective_ = 0.0;
  OracleResult result_;
};

}  // namespace

OracleResult BruteForce(const TimetableInstance& instance,
                        const ConnectionMatrices& matrices, int n_limit) {
  if (instance.size() > n_limit) {
    throw TooLargeError(
        "instance too large for oracle: " + std::to_string(instance.size()) +
        " trains, limit " + std::to_string(n_limit));
  }
  return Search(instance, matrices).Run();
}

double RelativeGap(double heuristic, double oracle) {
  return (heuristic - oracle) / std::max(oracle, 1e-9);
}

GapReport Compare(const TimetableInstance& instance,
                  const ConnectionMatrices& matrices,
                  const OracleResult& oracle,
                  const std::optional<SolveResult>& heuristic) {
  GapReport report;
  report.oracle_objective = oracle.best_objective;
  if (heuristic) {
    report.heuristic_fitness = heuristic->best_fitness;
    report.heuristic_feasible =
        Validate(heuristic->best_plan, instance, matrices).ok();
    if (report.heuristic_feasible) {
      report.heuristic_objective =
          ObjectiveValue(heuristic->best_plan, instance, matrices);
    }
  }
  const bool have_oracle = oracle.best_objective.has_value();
  const bool have_heuristic = report.heuristic_objective.has_value();
  if (have_oracle && have_heuristic) {
    report.status = GapReport::Status::kCompared;
    report.absolute_gap = *report.heuristic_objective - *oracle.best_objective;
    report.relative_gap =
        RelativeGap(*report.heuristic_objective, *oracle.best_objective);
  } else if (!have_oracle && !have_heuristic) {
    report.status = GapReport::Status::kConsistentlyInfeasible;
  } else if (have_oracle) {
    report.status = GapReport::Status::kHeuristicInfeasible;
  } else {
    report.status = GapReport::Status::kOracleInfeasible;
  }
  return report;
}

std::string_view StatusName(GapReport::Status status) {
  switch (status) {
    case GapReport::Status::kCompared:
      return "compared";
    case GapReport::Status::kConsistentlyInfeasible:
      return "consistently infeasible";
    case GapReport::Status::kHeuristicInfeasible:
      return "heuristic infeasible";
    case GapReport::Status::kOracleInfeasible:
      return "oracle infeasible";
  }
  return "?";
}

}  // namespace emu
