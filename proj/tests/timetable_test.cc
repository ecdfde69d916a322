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

#include <string>

#include "emu/error.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace emu {
namespace {

using ::emu::testing::ReadFixture;

constexpr char kHeader[] = "maint_station C\n";

TEST(ParseTimetableTest, TwelveTrainFixture) {
  const TimetableInstance inst = ParseTimetable(ReadFixture("twelve_train.tt"));
  EXPECT_EQ(inst.size(), 12);
  EXPECT_EQ(inst.maint_stations.size(), 1u);
  EXPECT_TRUE(inst.IsMaintStation("C"));
  EXPECT_EQ(inst.stations.size(), 3u);
  EXPECT_EQ(inst.train(5).dep_station, "C");
  EXPECT_EQ(inst.train(5).dep_time, 8 * 60);
  EXPECT_EQ(inst.train(5).travel_time, 144);
  EXPECT_DOUBLE_EQ(inst.train(5).mileage, 600.0);
  EXPECT_NO_THROW(ValidateInstance(inst));
  EXPECT_TRUE(InstanceWarnings(inst).empty());
}

TEST(ParseTimetableTest, DefaultsWhenParamsAbsent) {
  const TimetableInstance inst = ParseTimetable(
      std::string(kHeader) +
      "train 1 C 08:00 X 10:00 500 120\ntrain 2 X 10:40 C 12:40 500 120\n");
  EXPECT_EQ(inst.params, ModelParams{});
  EXPECT_DOUBLE_EQ(inst.params.l_cycle, 4000.0);
  EXPECT_EQ(inst.params.t_cycle, 2880);
}

TEST(ParseTimetableTest, TravelTimeTakenFromFile) {
  const TimetableInstance inst = ParseTimetable(
      std::string(kHeader) +
      "train 1 C 08:00 X 10:00 500 90\ntrain 2 X 10:40 C 12:40 500 120\n");
  EXPECT_EQ(inst.train(1).travel_time, 90);
  const auto warnings = InstanceWarnings(inst);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("train 1"), std::string::npos);
}

TEST(ParseTimetableTest, NoTrains) {
  try {
    ParseTimetable(kHeader);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("no trains"), std::string::npos);
  }
}

TEST(ParseTimetableTest, FlowBalance) {
  // A: 3 arrivals, 2 departures.
  const std::string text = std::string(kHeader) +
                           "train 1 C 06:00 A 07:00 100 60\n"
                           "train 2 B 06:00 A 07:00 100 60\n"
                           "train 3 C 08:00 A 09:00 100 60\n"
                           "train 4 A 10:00 C 11:00 100 60\n"
                           "train 5 A 12:00 B 13:00 100 60\n";
  try {
    ParseTimetable(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("flow balance"), std::string::npos) << msg;
    EXPECT_NE(msg.find("station A: 3 arrivals, 2 departures"),
              std::string::npos)
        << msg;
  }
}

TEST(ParseTimetableTest, SyntaxErrorReportsLineAndColumn) {
  const std::string text = std::string(kHeader) +
                           "train 1 C 08:00 X 10:00 500 120\n"
                           "train 2 X 1040 C 12:40 500 120\n";
  try {
    ParseTimetable(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 11);
    EXPECT_NE(std::string(e.what()).find("line 3, column 11"),
              std::string::npos);
  }
}

TEST(ParseTimetableTest, DuplicateId) {
  const std::string text = std::string(kHeader) +
                           "train 1 C 08:00 X 10:00 500 120\n"
                           "train 1 X 10:40 C 12:40 500 120\n";
  try {
    ParseTimetable(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("duplicate train id 1"),
              std::string::npos);
  }
}

TEST(ParseTimetableTest, UnknownMaintenanceStation) {
  EXPECT_THROW(ParseTimetable("maint_station Z\n"
                              "train 1 C 08:00 X 10:00 500 120\n"
                              "train 2 X 10:40 C 12:40 500 120\n"),
               ParseError);
}

TEST(ParseTimetableTest, SecondMaintenanceStationRejected) {
  EXPECT_THROW(ParseTimetable("maint_station C\nmaint_station X\n"
                              "train 1 C 08:00 X 10:00 500 120\n"
                              "train 2 X 10:40 C 12:40 500 120\n"),
               ParseError);
}

TEST(ParseTimetableTest, MissingMaintenanceStation) {
  EXPECT_THROW(ParseTimetable("train 1 C 08:00 X 10:00 500 120\n"
                              "train 2 X 10:40 C 12:40 500 120\n"),
               ParseError);
}

TEST(ParseTimetableTest, InvalidParamsRejected) {
  EXPECT_THROW(ParseTimetable("param lambda 0.2\n"), ParseError);
  EXPECT_THROW(ParseTimetable("param beta 1\n"), ParseError);
  EXPECT_THROW(ParseTimetable("param t_connect 0\n"), ParseError);
  EXPECT_THROW(ParseTimetable("param bogus 1\n"), ParseError);
}

TEST(ParseTimetableTest, TrainSpanningMidnightRejected) {
  EXPECT_THROW(ParseTimetable(std::string(kHeader) +
                              "train 1 C 23:00 X 01:00 500 120\n"
                              "train 2 X 10:40 C 12:40 500 120\n"),
               ParseError);
}

TEST(ParseTimetableTest, IdsMustBeContiguous) {
  EXPECT_THROW(ParseTimetable(std::string(kHeader) +
                              "train 1 C 08:00 X 10:00 500 120\n"
                              "train 3 X 10:40 C 12:40 500 120\n"),
               ParseError);
}

TEST(RenderTimetableTest, RoundTripFixture) {
  const TimetableInstance inst = ParseTimetable(ReadFixture("twelve_train.tt"));
  const std::string text = RenderTimetable(inst);
  EXPECT_EQ(ParseTimetable(text), inst);
  EXPECT_EQ(RenderTimetable(ParseTimetable(text)), text);
  EXPECT_NE(text.find("train 1 C 07:00 A 09:00 500.0 120\n"),
            std::string::npos);
}

TEST(GenerateInstanceTest, SmallestPairedInstance) {
  const TimetableInstance inst = GenerateInstance(1, 1, 7);
  ASSERT_EQ(inst.size(), 2);
  EXPECT_EQ(inst.train(1).dep_station, "C");
  EXPECT_EQ(inst.train(1).arr_station, "X");
  EXPECT_EQ(inst.train(2).dep_station, "X");
  EXPECT_EQ(inst.train(2).arr_station, "C");
  EXPECT_EQ(inst.maint_stations, std::set<StationId>{"C"});
  EXPECT_NO_THROW(ValidateInstance(inst));
}

TEST(GenerateInstanceTest, Deterministic) {
  EXPECT_EQ(GenerateInstance(4, 2, 7), GenerateInstance(4, 2, 7));
  EXPECT_EQ(RenderTimetable(GenerateInstance(4, 2, 7)),
            RenderTimetable(GenerateInstance(4, 2, 7)));
}

TEST(GenerateInstanceTest, DifferentSeedsDiffer) {
  int differing = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    if (!(GenerateInstance(4, 2, seed) == GenerateInstance(4, 2, seed + 1))) {
      ++differing;
    }
  }
  EXPECT_EQ(differing, 100);
}

TEST(GenerateInstanceTest, MileageRangeAndValidity) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int pairs = 1 + static_cast<int>(seed % 6);
    const int turnbacks = 1 + static_cast<int>(seed % 3);
    const TimetableInstance inst = GenerateInstance(pairs, turnbacks, seed);
    ASSERT_EQ(inst.size(), 2 * pairs);
    ASSERT_NO_THROW(ValidateInstance(inst)) << "seed " << seed;
    for (const Train& t : inst.trains) {
      EXPECT_GE(t.mileage, 100.0);
      EXPECT_LE(t.mileage, 1200.0);
    }
    EXPECT_EQ(ParseTimetable(RenderTimetable(inst)), inst);
  }
}

TEST(GenerateInstanceTest, RejectsBadArguments) {
  EXPECT_THROW(GenerateInstance(0, 1, 1), Error);
  EXPECT_THROW(GenerateInstance(1, 0, 1), Error);
}

TEST(FormatClockTest, Basic) {
  EXPECT_EQ(FormatClock(0), "00:00");
  EXPECT_EQ(FormatClock(7 * 60 + 5), "07:05");
  EXPECT_EQ(FormatClock(1439), "23:59");
}

}  // namespace
}  // namespace emu
