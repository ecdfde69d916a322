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

#ifndef EMU_RNG_H_
#define EMU_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace emu {

// Mixes a master seed with stream coordinates (e.g. particle index and
// iteration) into an independent substream seed. Pure function of its
// arguments, so evaluation order never affects which numbers a stream sees.
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t a,
                         std::uint64_t b = 0);

// mt19937_64 engine with distribution code owned here: the standard
// distributions are implementation-defined, these are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, 1).
  double UniformReal();

  // Uniform in [lo, hi], lo <= hi.
  double UniformReal(double lo, double hi);

  // Uniform in [0, bound), bound > 0. Unbiased (rejection sampling).
  std::uint64_t UniformIndex(std::uint64_t bound);

  // Uniform in [lo, hi] inclusive.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);

  template <typename T>
  const T& Pick(std::span<const T> items) {
    return items[UniformIndex(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace emu

#endif  // EMU_RNG_H_
