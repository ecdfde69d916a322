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

#ifndef EMU_TOOLS_CLI_H_
#define EMU_TOOLS_CLI_H_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "emu/plan.h"
#include "emu/pso.h"
#include "emu/timetable.h"

namespace emu::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kInfeasible = 2,
  kValidationFailed = 3,
};

// key=value lines, '#' comments. Keys mirror SwarmConfig and ModelParams:
// particles iters w_max w_min c1 c2 v_min v_max seed threads max_restarts
// maint_prob l_cycle t_cycle lambda t_connect omega1 omega2 beta.
using ConfigMap = std::map<std::string, std::string>;
ConfigMap ParseConfigFile(std::string_view text);

// Applies recognized keys; throws emu::Error on unknown keys or bad values.
void ApplyConfig(const ConfigMap& config, ModelParams& params,
                 SwarmConfig& swarm);

// Graphviz DOT: one node per train labeled "id: dep→arr", solid edges for
// train connections (labeled with the connection time), dashed edges for
// maintenance arcs.
std::string RenderDot(const CirculationPlan& plan,
                      const TimetableInstance& instance,
                      const ConnectionMatrices& matrices);

// Entry point behind the emu-roster binary. argv[0] is the program name.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace emu::cli

#endif  // EMU_TOOLS_CLI_H_
