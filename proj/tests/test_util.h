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

#ifndef EMU_TESTS_TEST_UTIL_H_
#define EMU_TESTS_TEST_UTIL_H_

// Test-only helpers. The naive enumerator and the direct model checker
// recompute connection times, eligibility and accumulations from raw train
// fields so they stay independent of the library code they check.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "emu/plan.h"
#include "emu/rng.h"
#include "emu/timetable.h"

#ifndef EMU_FIXTURE_DIR
#error "EMU_FIXTURE_DIR must be defined"
#endif

namespace emu::testing {

inline std::string ReadFixture(const std::string& name) {
  std::ifstream in(std::string(EMU_FIXTURE_DIR) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string FixturePath(const std::string& name) {
  return std::string(EMU_FIXTURE_DIR) + "/" + name;
}

inline Train MakeTrain(TrainId id, const std::string& dep, Minutes dep_time,
                       const std::string& arr, Minutes arr_time, double km,
                       Minutes travel) {
  return Train{id, dep, dep_time, arr, arr_time, km, travel};
}

// Assembles an instance without going through the parser (no validation).
inline TimetableInstance MakeInstance(std::vector<Train> trains,
                                      const std::string& depot = "C",
                                      ModelParams params = {}) {
  TimetableInstance instance;
  for (const Train& t : trains) {
    instance.stations.insert(t.dep_station);
    instance.stations.insert(t.arr_station);
  }
  instance.maint_stations.insert(depot);
  instance.stations.insert(depot);
  instance.trains = std::move(trains);
  instance.params = params;
  return instance;
}

// The two-train out-and-back instance: 1 = C->X 08:00-10:00, 2 = X->C
// 10:40-12:40, 500 km each.
inline TimetableInstance TwoTrainInstance() {
  return MakeInstance({MakeTrain(1, "C", 480, "X", 600, 500.0, 120),
                       MakeTrain(2, "X", 640, "C", 760, 500.0, 120)});
}

// Random balanced instance over stations C (depot), A, B: the stations of
// a random closed walk from C, with random times and mileages. Not
// necessarily paired; mileages are large enough that the cycle limits bind.
inline TimetableInstance RandomWalkInstance(int n, std::uint64_t seed,
                                            double max_km = 1500.0) {
  Rng rng(seed);
  const std::vector<std::string> names = {"C", "A", "B"};
  std::vector<std::string> stops = {"C"};
  for (int i = 1; i < n; ++i) {
    std::string next;
    do {
      next = names[rng.UniformIndex(names.size())];
    } while (next == stops.back() || (i == n - 1 && next == "C"));
    stops.push_back(next);
  }
  stops.push_back("C");
  std::vector<Train> trains;
  for (int i = 0; i < n; ++i) {
    const Minutes travel = static_cast<Minutes>(rng.UniformInt(30, 300));
    const Minutes dep =
        static_cast<Minutes>(rng.UniformInt(0, kMinutesPerDay - 1 - travel));
    const double km = static_cast<double>(rng.UniformInt(
                          1000, static_cast<std::int64_t>(max_km * 10))) /
                      10.0;
    trains.push_back(MakeTrain(i + 1, stops[i], dep, stops[i + 1], dep + travel,
                               km, travel));
  }
  return MakeInstance(std::move(trains));
}

// --- Independent model evaluation -------------------------------------

inline std::optional<Minutes> RawConn(const Train& a, const Train& b,
                                      Minutes t_connect) {
  if (a.arr_station != b.dep_station) return std::nullopt;
  Minutes t = b.dep_time - a.arr_time;
  if (t < t_connect) t += 1440;
  return t;
}

inline bool RawTheta(const Train& a, const Train& b,
                     const TimetableInstance& inst) {
  return a.arr_station == b.dep_station &&
         inst.maint_stations.count(a.arr_station) > 0;
}

// Objective of a plan if every model constraint holds, else nullopt.
// Works directly on x_ij / y_ij matrices induced by the plan.
inline std::optional<double> DirectObjective(
    const std::vector<TrainId>& order, const std::vector<std::uint8_t>& maint,
    const TimetableInstance& inst) {
  const int n = inst.size();
  if (static_cast<int>(order.size()) != n ||
      static_cast<int>(maint.size()) != n || n < 2) {
    return std::nullopt;
  }
  for (TrainId id : order) {
    if (id < 1 || id > n) return std::nullopt;
  }
  for (auto f : maint) {
    if (f > 1) return std::nullopt;
  }
  if (maint[n - 1] != 1)
    return std::nullopt;  // representation: closes at depot
  std::vector<std::vector<int>> x(n + 1, std::vector<int>(n + 1, 0));
  std::vector<std::vector<int>> y = x;
  for (int d = 0; d < n; ++d) {
    const TrainId i = order[d];
    const TrainId j = order[(d + 1) % n];
    x[i][j] += 1;
    y[i][j] += maint[d];
  }
  for (int v = 1; v <= n; ++v) {
    if (x[v][v] != 0) return std::nullopt;
    int in = 0, out = 0;
    for (int u = 1; u <= n; ++u) {
      in += x[u][v];
      out += x[v][u];
    }
    if (in != 1 || out != 1) return std::nullopt;  // in/out degree
  }
  // Single cycle through all trains (subtour elimination).
  std::vector<int> succ(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (x[i][j]) succ[i] = j;
    }
  }
  int len = 0;
  int v = 1;
  do {
    v = succ[v];
    ++len;
  } while (v != 1 && len <= n);
  if (len != n) return std::nullopt;

  const ModelParams& p = inst.params;
  double conn_sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (!x[i][j]) continue;
      const Train& a = inst.trains[i - 1];
      const Train& b = inst.trains[j - 1];
      if (y[i][j] > (RawTheta(a, b, inst) ? 1 : 0))
        return std::nullopt;  // eligibility
      if (!y[i][j]) {
        const auto t = RawConn(a, b, p.t_connect);
        if (!t) return std::nullopt;
        conn_sum += *t;
      }
    }
  }
  // Accumulations, starting from the train after a maintenance arc.
  std::vector<double> l(n + 1, 0.0);
  std::vector<double> t(n + 1, 0.0);
  TrainId start = order[0];
  TrainId prev = order[n - 1];
  for (int k = 0; k < n; ++k) {
    const TrainId j = k == 0 ? start : succ[prev];
    const Train& b = inst.trains[j - 1];
    if (k == 0 || y[prev][j]) {
      l[j] = b.mileage;
      t[j] = b.travel_time;
    } else {
      const Train& a = inst.trains[prev - 1];
      l[j] = l[prev] + b.mileage;
      t[j] = t[prev] + *RawConn(a, b, p.t_connect) + b.travel_time;
    }
    if (l[j] > (1 + p.lambda) * p.l_cycle) return std::nullopt;  // mileage
    if (t[j] > (1 + p.lambda) * p.t_cycle) return std::nullopt;  // time
    prev = j;
  }
  double slack = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (y[i][j]) slack += (1 + p.lambda) * p.l_cycle - l[i];
    }
  }
  return p.omega1 * conn_sum + p.omega2 * slack;
}

struct NaiveResult {
  std::optional<double> best_objective;
  std::int64_t feasible_count = 0;
};

// Every permutation times every maintenance vector (closing flag fixed to
// 1), no pruning. Counts each solution once by requiring the plan to start
// at its lowest-id rotation start.
inline NaiveResult NaiveEnumerate(const TimetableInstance& inst) {
  const int n = inst.size();
  NaiveResult result;
  std::vector<TrainId> order(n);
  std::iota(order.begin(), order.end(), 1);
  const std::uint32_t masks = 1u << (n - 1);
  do {
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
      std::vector<std::uint8_t> maint(n, 0);
      maint[n - 1] = 1;
      TrainId lowest_start = order[0];
      for (int d = 0; d < n - 1; ++d) {
        maint[d] = (mask >> d) & 1u;
        if (maint[d]) lowest_start = std::min(lowest_start, order[d + 1]);
      }
      if (lowest_start != order[0]) continue;
      const auto obj = DirectObjective(order, maint, inst);
      if (!obj) continue;
      ++result.feasible_count;
      if (!result.best_objective || *obj < *result.best_objective) {
        result.best_objective = *obj;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return result;
}

}  // namespace emu::testing

#endif  // EMU_TESTS_TEST_UTIL_H_
