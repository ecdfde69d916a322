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

#include "emu/timetable.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "emu/error.h"
#include "emu/rng.h"

namespace emu {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(line > 0 ? "line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message
                     : message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> Tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    tokens.push_back(
        {line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

template <typename T>
std::optional<T> ParseNumber(std::string_view s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) return std::nullopt;
  }
  return value;
}

std::optional<Minutes> ParseClock(std::string_view s) {
  if (s.size() != 5 || s[2] != ':') return std::nullopt;
  const auto hh = ParseNumber<int>(s.substr(0, 2));
  const auto mm = ParseNumber<int>(s.substr(3, 2));
  if (!hh || !mm || *hh < 0 || *hh > 23 || *mm < 0 || *mm > 59) {
    return std::nullopt;
  }
  return *hh * 60 + *mm;
}

std::string FormatShortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string FormatTenths(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

[[noreturn]] void Fail(int line, int column, const std::string& message) {
  throw ParseError(line, column, message);
}

void CheckTrain(const Train& t, int line, int column) {
  if (t.dep_station == t.arr_station) {
    Fail(line, column,
         "train " + std::to_string(t.id) +
             " departs and arrives at the same station");
  }
  if (t.dep_time < 0 || t.dep_time >= kMinutesPerDay || t.arr_time < 0 ||
      t.arr_time >= kMinutesPerDay) {
    Fail(line, column, "train " + std::to_string(t.id) + " time out of day");
  }
  if (t.arr_time < t.dep_time) {
    Fail(line, column, "train " + std::to_string(t.id) + " spans midnight");
  }
  if (!(t.mileage > 0.0)) {
    Fail(line, column,
         "train " + std::to_string(t.id) + " mileage must be positive");
  }
  if (t.travel_time <= 0) {
    Fail(line, column,
         "train " + std::to_string(t.id) + " travel time must be positive");
  }
}

void CheckFlowBalance(const TimetableInstance& instance) {
  std::map<StationId, int> balance;
  for (const Train& t : instance.trains) {
    ++balance[t.arr_station];
    --balance[t.dep_station];
  }
  for (const auto& [station, delta] : balance) {
    if (delta != 0) {
      int arrivals = 0;
      int departures = 0;
      for (const Train& t : instance.trains) {
        arrivals += t.arr_station == station;
        departures += t.dep_station == station;
      }
      Fail(0, 0,
           "flow balance violated at station " + station + ": " +
               std::to_string(arrivals) + " arrivals, " +
               std::to_string(departures) + " departures");
    }
  }
}

}  // namespace

std::string FormatClock(Minutes t) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d:%02d", t / 60, t % 60);
  return buf;
}

bool TimetableInstance::IsMaintStation(std::string_view station) const {
  return maint_stations.find(std::string(station)) != maint_stations.end();
}

void ValidateParams(const ModelParams& p) {
  if (!(p.l_cycle > 0)) throw Error("param l_cycle must be > 0");
  if (p.t_cycle <= 0) throw Error("param t_cycle must be > 0");
  if (!(p.lambda >= 0 && p.lambda <= 0.10)) {
    throw Error("param lambda must lie in [0, 0.10]");
  }
  if (p.t_connect <= 0) throw Error("param t_connect must be > 0");
  if (!(p.omega1 >= 0)) throw Error("param omega1 must be >= 0");
  if (!(p.omega2 >= 0)) throw Error("param omega2 must be >= 0");
  if (!(p.beta > 1)) throw Error("param beta must be > 1");
}

void ValidateInstance(const TimetableInstance& instance) {
  if (instance.trains.empty()) Fail(0, 0, "no trains");
  for (std::size_t i = 0; i < instance.trains.size(); ++i) {
    const Train& t = instance.trains[i];
    if (t.id != static_cast<TrainId>(i) + 1) {
      Fail(0, 0, "train ids must be exactly 1..n in order");
    }
    CheckTrain(t, 0, 0);
    if (!instance.stations.contains(t.dep_station) ||
        !instance.stations.contains(t.arr_station)) {
      Fail(0, 0, "train " + std::to_string(t.id) + " uses an unknown station");
    }
  }
  if (instance.maint_stations.size() != 1) {
    Fail(0, 0,
         "exactly one maintenance station is required, found " +
             std::to_string(instance.maint_stations.size()));
  }
  for (const StationId& s : instance.maint_stations) {
    if (!instance.stations.contains(s)) {
      Fail(0, 0, "maintenance station " + s + " is not a timetable station");
    }
  }
  try {
    ValidateParams(instance.params);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    Fail(0, 0, e.what());
  }
  CheckFlowBalance(instance);
}

std::vector<std::string> InstanceWarnings(const TimetableInstance& instance) {
  std::vector<std::string> warnings;
  const ModelParams& p = instance.params;
  for (const Train& t : instance.trains) {
    const Minutes scheduled =
        ((t.arr_time - t.dep_time) % kMinutesPerDay + kMinutesPerDay) %
        kMinutesPerDay;
    if (scheduled != t.travel_time) {
      warnings.push_back("train " + std::to_string(t.id) + " travel time " +
                         std::to_string(t.travel_time) +
                         " differs from timetable span " +
                         std::to_string(scheduled));
    }
    if (t.mileage > p.MileageLimit() || t.travel_time > p.TimeLimit()) {
      warnings.push_back("train " + std::to_string(t.id) +
                         " alone exceeds a maintenance limit; instance is "
                         "infeasible");
    }
  }
  return warnings;
}

TimetableInstance ParseTimetable(std::string_view text) {
  TimetableInstance instance;
  std::map<TrainId, std::pair<Train, int>> by_id;  // id -> (train, line)
  std::optional<std::pair<StationId, std::pair<int, int>>> maint;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const std::vector<Token> tok = Tokenize(line);
    if (tok.empty() || tok[0].text.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const std::string_view kind = tok[0].text;
    auto expect_count = [&](std::size_t n) {
      if (tok.size() != n) {
        const int col =
            tok.size() > n ? tok[n].column : static_cast<int>(line.size()) + 1;
        Fail(line_no, col,
             "'" + std::string(kind) + "' expects " + std::to_string(n - 1) +
                 " fields, got " + std::to_string(tok.size() - 1));
      }
    };

    if (kind == "param") {
      expect_count(3);
      const std::string_view name = tok[1].text;
      const Token& v = tok[2];
      ModelParams& p = instance.params;
      auto real = [&]() {
        const auto x = ParseNumber<double>(v.text);
        if (!x) Fail(line_no, v.column, "expected a number");
        return *x;
      };
      auto integer = [&]() {
        const auto x = ParseNumber<int>(v.text);
        if (!x) Fail(line_no, v.column, "expected an integer");
        return *x;
      };
      if (name == "l_cycle") {
        p.l_cycle = real();
      } else if (name == "t_cycle") {
        p.t_cycle = integer();
      } else if (name == "lambda") {
        p.lambda = real();
      } else if (name == "t_connect") {
        p.t_connect = integer();
      } else if (name == "omega1") {
        p.omega1 = real();
      } else if (name == "omega2") {
        p.omega2 = real();
      } else if (name == "beta") {
        p.beta = real();
      } else {
        Fail(line_no, tok[1].column,
             "unknown parameter '" + std::string(name) + "'");
      }
      try {
        ValidateParams(p);
      } catch (const Error& e) {
        Fail(line_no, v.column, e.what());
      }
    } else if (kind == "maint_station") {
      expect_count(2);
      const StationId s(tok[1].text);
      if (maint && maint->first != s) {
        Fail(line_no, tok[1].column,
             "a second maintenance station is not supported (single depot)");
      }
      maint = {s, {line_no, tok[1].column}};
    } else if (kind == "train") {
      expect_count(8);
      Train t;
      const auto id = ParseNumber<int>(tok[1].text);
      if (!id || *id < 1) Fail(line_no, tok[1].column, "bad train id");
      t.id = *id;
      t.dep_station = StationId(tok[2].text);
      const auto dep = ParseClock(tok[3].text);
      if (!dep) Fail(line_no, tok[3].column, "expected HH:MM");
      t.dep_time = *dep;
      t.arr_station = StationId(tok[4].text);
      const auto arr = ParseClock(tok[5].text);
      if (!arr) Fail(line_no, tok[5].column, "expected HH:MM");
      t.arr_time = *arr;
      const auto km = ParseNumber<double>(tok[6].text);
      if (!km) Fail(line_no, tok[6].column, "expected mileage in km");
      t.mileage = *km;
      const auto minutes = ParseNumber<int>(tok[7].text);
      if (!minutes) Fail(line_no, tok[7].column, "expected travel minutes");
      t.travel_time = *minutes;
      CheckTrain(t, line_no, tok[0].column);
      if (by_id.contains(t.id)) {
        Fail(line_no, tok[1].column,
             "duplicate train id " + std::to_string(t.id));
      }
      by_id.emplace(t.id, std::make_pair(std::move(t), line_no));
    } else {
      Fail(line_no, tok[0].column,
           "unknown directive '" + std::string(kind) + "'");
    }
    if (end == text.size()) break;
  }

  if (by_id.empty()) Fail(0, 0, "no trains");
  const int n = static_cast<int>(by_id.size());
  for (auto& [id, entry] : by_id) {
    if (id > n) {
      Fail(entry.second, 7,
           "train ids must form 1.." + std::to_string(n) + ", found " +
               std::to_string(id));
    }
    instance.stations.insert(entry.first.dep_station);
    instance.stations.insert(entry.first.arr_station);
    instance.trains.push_back(std::move(entry.first));
  }
  if (!maint) Fail(0, 0, "missing maint_station line");
  if (!instance.stations.contains(maint->first)) {
    Fail(maint->second.first, maint->second.second,
         "unknown maintenance station " + maint->first);
  }
  instance.maint_stations.insert(maint->first);
  CheckFlowBalance(instance);
  return instance;
}

std::string RenderTimetable(const TimetableInstance& instance) {
  std::ostringstream out;
  const ModelParams& p = instance.params;
  out << "# emu-roster timetable\n";
  out << "param l_cycle " << FormatShortest(p.l_cycle) << "\n";
  out << "param t_cycle " << p.t_cycle << "\n";
  out << "param lambda " << FormatShortest(p.lambda) << "\n";
  out << "param t_connect " << p.t_connect << "\n";
  out << "param omega1 " << FormatShortest(p.omega1) << "\n";
  out << "param omega2 " << FormatShortest(p.omega2) << "\n";
  out << "param beta " << FormatShortest(p.beta) << "\n";
  for (const StationId& s : instance.maint_stations) {
    out << "maint_station " << s << "\n";
  }
  std::vector<const Train*> sorted;
  for (const Train& t : instance.trains) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const Train* a, const Train* b) { return a->id < b->id; });
  for (const Train* t : sorted) {
    out << "train " << t->id << ' ' << t->dep_station << ' '
        << FormatClock(t->dep_time) << ' ' << t->arr_station << ' '
        << FormatClock(t->arr_time) << ' ' << FormatTenths(t->mileage) << ' '
        << t->travel_time << "\n";
  }
  return out.str();
}

TimetableInstance GenerateInstance(int n_pairs, int n_turnback_stations,
                                   std::uint64_t seed) {
  if (n_pairs < 1) throw Error("n_pairs must be >= 1");
  if (n_turnback_stations < 1) throw Error("n_turnback_stations must be >= 1");

  constexpr double kSpeedKmPerMin = 250.0 / 60.0;
  constexpr Minutes kFirstDeparture = 300;  // 05:00

  Rng rng(seed);
  const StationId depot = "C";
  std::vector<StationId> turnbacks;
  for (int k = 0; k < n_turnback_stations; ++k) {
    turnbacks.push_back(k == 0 ? "X" : "X" + std::to_string(k + 1));
  }

  TimetableInstance instance;
  instance.maint_stations.insert(depot);
  instance.stations.insert(depot);
  for (int p = 0; p < n_pairs; ++p) {
    const StationId& far = turnbacks[rng.UniformIndex(turnbacks.size())];
    instance.stations.insert(far);
    const double km = static_cast<double>(rng.UniformInt(1000, 12000)) / 10.0;
    const Minutes travel =
        std::max(1, static_cast<int>(std::lround(km / kSpeedKmPerMin)));
    const Minutes last_departure = kMinutesPerDay - 1 - travel;

    Train out;
    out.id = 2 * p + 1;
    out.dep_station = depot;
    out.arr_station = far;
    out.dep_time =
        static_cast<Minutes>(rng.UniformInt(kFirstDeparture, last_departure));
    out.arr_time = out.dep_time + travel;
    out.mileage = km;
    out.travel_time = travel;

    Train back;
    back.id = 2 * p + 2;
    back.dep_station = far;
    back.arr_station = depot;
    back.dep_time =
        static_cast<Minutes>(rng.UniformInt(kFirstDeparture, last_departure));
    back.arr_time = back.dep_time + travel;
    back.mileage = km;
    back.travel_time = travel;

    instance.trains.push_back(std::move(out));
    instance.trains.push_back(std::move(back));
  }
  return instance;
}

}  // namespace emu
