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

#ifndef EMU_TIMETABLE_H_
#define EMU_TIMETABLE_H_

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace emu {

using Minutes = int;
using TrainId = int;
using StationId = std::string;

inline constexpr Minutes kMinutesPerDay = 1440;

// One timetabled service. Times are minutes since the start of the service
// day, in [0, 1440); a train never spans midnight.
struct Train {
  TrainId id = 0;
  StationId dep_station;
  Minutes dep_time = 0;
  StationId arr_station;
  Minutes arr_time = 0;
  double mileage = 0.0;  // km
  Minutes travel_time = 0;

  friend bool operator==(const Train&, const Train&) = default;
};

// Maintenance cycle limits and objective weights.
//
// l_cycle and t_cycle default to the grade-I maintenance cycle (4000 km and
// two days). The remaining defaults are implementation choices.
struct ModelParams {
  double l_cycle = 4000.0;  // km
  Minutes t_cycle = 2880;
  double lambda = 0.05;    // allowed overrun fraction, <= 0.10
  Minutes t_connect = 20;  // minimum turnaround
  double omega1 = 1.0;     // weight on total connection time
  double omega2 = 0.01;    // weight on unused mileage at maintenance
  double beta = 10.0;      // mileage overrun penalty, > 1

  double MileageLimit() const { return (1.0 + lambda) * l_cycle; }
  double TimeLimit() const { return (1.0 + lambda) * t_cycle; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Throws emu::Error naming the first violated parameter constraint.
void ValidateParams(const ModelParams& params);

// A daily timetable served from a single maintenance depot. trains[i] has
// id i + 1.
struct TimetableInstance {
  std::vector<Train> trains;
  std::set<StationId> stations;
  std::set<StationId> maint_stations;
  ModelParams params;

  int size() const { return static_cast<int>(trains.size()); }
  const Train& train(TrainId id) const { return trains[id - 1]; }
  bool IsMaintStation(std::string_view station) const;

  friend bool operator==(const TimetableInstance&,
                         const TimetableInstance&) = default;
};

// Checks every instance invariant (ids 1..n, stations known, exactly one
// maintenance station, per-station flow balance, train fields). Throws
// emu::ParseError with line 0 on the first violation.
void ValidateInstance(const TimetableInstance& instance);

// Non-fatal findings: travel_time disagreeing with the timetable times,
// trains that alone exceed a maintenance limit.
std::vector<std::string> InstanceWarnings(const TimetableInstance& instance);

// Parses the line-oriented timetable format:
//
//   # comment
//   param <name> <value>
//   maint_station <id>
//   train <id> <dep_station> <HH:MM> <arr_station> <HH:MM> <km> <minutes>
//
// Trains may appear in any id order; the result is sorted by id.
// Throws emu::ParseError with the offending line and column.
TimetableInstance ParseTimetable(std::string_view text);

// Byte-stable rendering accepted by ParseTimetable.
std::string RenderTimetable(const TimetableInstance& instance);

// Synthetic paired instance: n_pairs out-and-back trains between depot
// station "C" and turn-back stations "X", "X2", ... Deterministic in seed.
TimetableInstance GenerateInstance(int n_pairs, int n_turnback_stations,
                                   std::uint64_t seed);

std::string FormatClock(Minutes t);

}  // namespace emu

#endif  // EMU_TIMETABLE_H_
