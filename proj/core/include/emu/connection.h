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

#ifndef EMU_CONNECTION_H_
#define EMU_CONNECTION_H_

#include <optional>
#include <string>
#include <vector>

#include "emu/timetable.h"

namespace emu {

// Connection time from train i to train j: departure of j minus arrival of
// i, pushed to the next day (+1440) when below the minimum turnaround.
// std::nullopt when j does not depart from the station where i arrives.
std::optional<Minutes> ConnectionTime(const Train& from, const Train& to,
                                      Minutes t_connect);

// True iff `to` departs from the station where `from` arrives and that
// station is adjacent to the maintenance depot.
bool MaintenanceEligible(const Train& from, const Train& to,
                         const TimetableInstance& instance);

// Dense connection network over train indices (id - 1). Diagonal entries
// are infeasible / not eligible.
class ConnectionMatrices {
 public:
  ConnectionMatrices() = default;
  explicit ConnectionMatrices(const TimetableInstance& instance);

  int size() const { return n_; }

  // Both accessors take train ids (1-based).
  std::optional<Minutes> conn_time(TrainId from, TrainId to) const {
    const Minutes v = conn_[Index(from, to)];
    if (v == kInfeasible) return std::nullopt;
    return v;
  }
  bool feasible(TrainId from, TrainId to) const {
    return conn_[Index(from, to)] != kInfeasible;
  }
  bool theta(TrainId from, TrainId to) const {
    return theta_[Index(from, to)] != 0;
  }

  // Tab-separated dump with an "INF" sentinel; rows and columns in id order.
  std::string DumpConnTimeTsv() const;
  std::string DumpThetaTsv() const;

 private:
  static constexpr Minutes kInfeasible = -1;

  std::size_t Index(TrainId from, TrainId to) const {
    return static_cast<std::size_t>(from - 1) * n_ + (to - 1);
  }

  int n_ = 0;
  std::vector<Minutes> conn_;
  std::vector<char> theta_;
};

inline ConnectionMatrices BuildMatrices(const TimetableInstance& instance) {
  return ConnectionMatrices(instance);
}

}  // namespace emu

#endif  // EMU_CONNECTION_H_
