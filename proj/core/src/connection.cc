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

#include "emu/connection.h"

#include <sstream>

namespace emu {

std::optional<Minutes> ConnectionTime(const Train& from, const Train& to,
                                      Minutes t_connect) {
  if (from.arr_station != to.dep_station) return std::nullopt;
  const Minutes gap = to.dep_time - from.arr_time;
  if (gap >= t_connect) return gap;
  return gap + kMinutesPerDay;
}

// The eligible station is the arrival of `from` and the departure of `to`.
bool MaintenanceEligible(const Train& from, const Train& to,
                         const TimetableInstance& instance) {
  return from.arr_station == to.dep_station &&
         instance.IsMaintStation(from.arr_station);
}

ConnectionMatrices::ConnectionMatrices(const TimetableInstance& instance)
    : n_(instance.size()),
      conn_(static_cast<std::size_t>(n_) * n_, kInfeasible),
      theta_(static_cast<std::size_t>(n_) * n_, 0) {
  const Minutes t_connect = instance.params.t_connect;
  for (const Train& a : instance.trains) {
    for (const Train& b : instance.trains) {
      if (a.id == b.id) continue;
      if (const auto t = ConnectionTime(a, b, t_connect)) {
        conn_[Index(a.id, b.id)] = *t;
      }
      theta_[Index(a.id, b.id)] = MaintenanceEligible(a, b, instance);
    }
  }
}

std::string ConnectionMatrices::DumpConnTimeTsv() const {
  std::ostringstream out;
  for (TrainId i = 1; i <= n_; ++i) {
    for (TrainId j = 1; j <= n_; ++j) {
      if (j > 1) out << '\t';
      const auto t = conn_time(i, j);
      if (t) {
        out << *t;
      } else {
        out << "INF";
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string ConnectionMatrices::DumpThetaTsv() const {
  std::ostringstream out;
  for (TrainId i = 1; i <= n_; ++i) {
    for (TrainId j = 1; j <= n_; ++j) {
      if (j > 1) out << '\t';
      out << (theta(i, j) ? 1 : 0);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace emu
