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
#include <numeric>
#include <string>

#include "emu/error.h"
#include "emu/oracle.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace emu {
namespace {

using ::emu::testing::ReadFixture;

bool IsPermutation(const std::vector<TrainId>& order, int n) {
  std::vector<TrainId> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<TrainId> ids(n);
  std::iota(ids.begin(), ids.end(), 1);
  return sorted == ids;
}

TEST(InertiaWeightTest, Endpoints) {
  SwarmConfig c;
  c.k_max = 100;
  EXPECT_EQ(InertiaWeight(0, c), c.w_max);
  EXPECT_EQ(InertiaWeight(100, c), c.w_min);
  EXPECT_DOUBLE_EQ(InertiaWeight(50, c), 0.65);
}

TEST(InertiaWeightTest, AffineInK) {
  SwarmConfig c;
  c.k_max = 500;
  for (int k = 0; k + 20 <= c.k_max; k += 7) {
    const double a = InertiaWeight(k, c);
    const double b = InertiaWeight(k + 10, c);
    const double d = InertiaWeight(k + 20, c);
    EXPECT_NEAR(b - a, d - b, 1e-12);
  }
}

TEST(UpdateVelocityTest, FixedPoint) {
  EXPECT_EQ(UpdateVelocity(0, 4, 4, 4, 0.9, 2, 2, 0.3, 0.7, {-6, 6}), 0.0);
}

TEST(UpdateVelocityTest, HandValue) {
  // c1 pairs with the global best (5), c2 with the personal best (3).
  EXPECT_DOUBLE_EQ(UpdateVelocity(1, 4, 5, 3, 0.8, 2, 2, 0.5, 0.5, {-6, 6}),
                   0.8);
  EXPECT_DOUBLE_EQ(UpdateVelocity(0, 4, 5, 3, 0.8, 2, 0, 0.5, 0.5, {-6, 6}),
                   1.0);
}

TEST(UpdateVelocityTest, ClampsAtBothBounds) {
  EXPECT_EQ(UpdateVelocity(0, 1, 12, 12, 0.9, 2, 2, 1, 1, {-6, 6}), 6.0);
  EXPECT_EQ(UpdateVelocity(0, 12, 1, 1, 0.9, 2, 2, 1, 1, {-6, 6}), -6.0);
  EXPECT_EQ(UpdateVelocity(-20, 5, 5, 5, 1.0, 2, 2, 1, 1, {-6, 6}), -6.0);
}

TEST(UpdatePositionTest, Examples) {
  EXPECT_EQ(UpdatePosition(3, 1.4, 10), 4);
  EXPECT_EQ(UpdatePosition(10, 5.0, 10), 10);
  EXPECT_EQ(UpdatePosition(2, 0.0, 10), 2);
  EXPECT_EQ(UpdatePosition(2, -7.0, 10), 1);
}

TEST(UpdatePositionTest, RoundsHalfAwayFromZero) {
  EXPECT_EQ(UpdatePosition(2, 0.5, 10), 3);
  EXPECT_EQ(UpdatePosition(3, -0.5, 10), 3);  // 2.5 -> 3
  EXPECT_EQ(UpdatePosition(3, -1.5, 10), 2);  // 1.5 -> 2
  EXPECT_EQ(UpdatePosition(1, -1.5, 10), 1);  // -0.5 -> -1 -> 1
}

TEST(DefaultVelocityClampTest, HalfOfN) {
  const VelocityClamp c = DefaultVelocityClamp(12, SwarmConfig{});
  EXPECT_EQ(c.lo, -6.0);
  EXPECT_EQ(c.hi, 6.0);
  SwarmConfig custom;
  custom.v_min = -2;
  custom.v_max = 3;
  EXPECT_EQ(DefaultVelocityClamp(12, custom).hi, 3.0);
}

TEST(ValidateSwarmConfigTest, RejectsBadValues) {
  SwarmConfig c;
  EXPECT_NO_THROW(ValidateSwarmConfig(c));
  c.n_particles = 0;
  EXPECT_THROW(ValidateSwarmConfig(c), Error);
  c = {};
  c.w_min = 1.0;
  EXPECT_THROW(ValidateSwarmConfig(c), Error);
  c = {};
  c.threads = 0;
  EXPECT_THROW(ValidateSwarmConfig(c), Error);
  c = {};
  c.constructor.maint_prob = 1.5;
  EXPECT_THROW(ValidateSwarmConfig(c), Error);
}

TEST(DecodePositionTest, FeasibleOrderDecodesToItself) {
  // With maintenance always taken at the depot, the acceptance path
  // reproduces the fixture plan exactly.
  const TimetableInstance inst = ParseTimetable(ReadFixture("twelve_train.tt"));
  const ConnectionMatrices m(inst);
  const CirculationPlan fixture =
      ParsePlan(ReadFixture("twelve_train.plan"), inst);
  ConstructorOptions always;
  always.maint_prob = 1.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const auto plan = DecodePosition(fixture.order, inst, m, rng, always);
    ASSERT_TRUE(plan.has_value());
    EXPECT_EQ(*plan, fixture);
  }
}

TEST(DecodePositionTest, ConstructedPlansDecodeToThemselves) {
  ConstructorOptions always;
  always.maint_prob = 1.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const TimetableInstance inst =
        GenerateInstance(2 + static_cast<int>(seed % 5), 2, seed);
    const ConnectionMatrices m(inst);
    Rng rng(seed);
    const CirculationPlan built = Construct(inst, m, rng, always);
    const auto plan = DecodePosition(built.order, inst, m, rng, always);
    ASSERT_TRUE(plan.has_value());
    EXPECT_EQ(plan->order, built.order) << "seed " << seed;
  }
}

TEST(DecodePositionTest, TwoTrainOrderDecodesToItself) {
  const TimetableInstance inst = testing::TwoTrainInstance();
  const ConnectionMatrices m(inst);
  Rng rng(5);
  const std::vector<TrainId> position = {1, 2};
  EXPECT_EQ(DecodePosition(position, inst, m, rng),
            (CirculationPlan{{1, 2}, {0, 1}}));
}

TEST(DecodePositionTest, AllOnesRepairsToPermutation) {
  int decoded = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const TimetableInstance inst =
        GenerateInstance(2 + static_cast<int>(seed % 5), 2, seed);
    const ConnectionMatrices m(inst);
    const std::vector<TrainId> ones(inst.size(), 1);
    Rng rng(seed);
    const auto plan = DecodePosition(ones, inst, m, rng);
    if (!plan) continue;
    ++decoded;
    EXPECT_TRUE(IsPermutation(plan->order, inst.size()));
    EXPECT_EQ(plan->maint_after.back(), 1);
  }
  EXPECT_GT(decoded, 50);
}

TEST(DecodePositionTest, Deterministic) {
  const TimetableInstance inst = ParseTimetable(ReadFixture("twelve_train.tt"));
  const ConnectionMatrices m(inst);
  const std::vector<TrainId> position = {5, 3, 3, 9, 1, 12, 7, 7, 2, 4, 11, 6};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng a(seed);
    Rng b(seed);
    EXPECT_EQ(DecodePosition(position, inst, m, a),
              DecodePosition(position, inst, m, b));
  }
}

TEST(SolveTest, TwoTrainOptimalFromTheStart) {
  const TimetableInstance inst = testing::TwoTrainInstance();
  SwarmConfig c;
  c.k_max = 20;
  const SolveResult r = Solve(inst, c);
  EXPECT_EQ(r.best_plan, (CirculationPlan{{1, 2}, {0, 1}}));
  EXPECT_EQ(r.best_fitness, 72.0);
  ASSERT_EQ(r.trace.size(), 21u);
  EXPECT_EQ(r.trace[0].global_best_fitness, 72.0);
  EXPECT_EQ(r.trace[1].global_best_fitness, 72.0);
  EXPECT_EQ(r.trace[0].feasible_fraction, 1.0);
}

TEST(SolveTest, EightTrainsReachesOracleOptimum) {
  const TimetableInstance inst = GenerateInstance(4, 2, 1);
  const ConnectionMatrices m(inst);
  const SolveResult r = Solve(inst, m, SwarmConfig{});
  const OracleResult o = BruteForce(inst, m);
  ASSERT_TRUE(o.best_objective.has_value());
  EXPECT_TRUE(Validate(r.best_plan, inst, m).ok());
  EXPECT_NEAR(r.best_fitness, *o.best_objective, 1e-9);
}

TEST(SolveTest, TraceIsNonIncreasing) {
  const TimetableInstance inst = ParseTimetable(ReadFixture("twelve_train.tt"));
  SwarmConfig c;
  c.k_max = 100;
  const SolveResult r = Solve(inst, c);
  ASSERT_EQ(r.trace.size(), 101u);
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    EXPECT_EQ(r.trace[k].iter, static_cast<int>(k));
    EXPECT_LE(r.trace[k].global_best_fitness,
              r.trace[k - 1].global_best_fitness);
  }
  EXPECT_TRUE(Validate(r.best_plan, inst, ConnectionMatrices(inst)).ok());
}

TEST(SolveTest, BitIdenticalAcrossRunsAndThreads) {
  const TimetableInstance inst = GenerateInstance(5, 2, 11);
  SwarmConfig c;
  c.k_max = 60;
  const SolveResult a = Solve(inst, c);
  const SolveResult b = Solve(inst, c);
  c.threads = 4;
  const SolveResult d = Solve(inst, c);
  for (const SolveResult* other : {&b, &d}) {
    EXPECT_EQ(a.best_plan, other->best_plan);
    EXPECT_EQ(a.best_fitness, other->best_fitness);
    EXPECT_EQ(a.global_best_plan, other->global_best_plan);
    EXPECT_EQ(a.trace, other->trace);
    EXPECT_EQ(a.restarts, other->restarts);
  }
}

TEST(SolveTest, InfeasibleInstanceThrows) {
  TimetableInstance inst = testing::TwoTrainInstance();
  inst.trains[0].mileage = 9000;
  SwarmConfig c;
  c.k_max = 5;
  EXPECT_THROW(Solve(inst, c), InfeasibleError);
}

TEST(RenderTraceTest, Format) {
  const std::vector<TraceRow> rows = {{0, 72.0, 1.0}, {1, 70.5, 0.25}};
  EXPECT_EQ(RenderTrace(rows),
            "iter,global_best_fitness,feasible_fraction\n"
            "0,72.000000,1.0000\n"
            "1,70.500000,0.2500\n");
}

}  // namespace
}  // namespace emu
