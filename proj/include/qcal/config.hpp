// Copyright 2026 The qcal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcal/device.hpp"
#include "qcal/lattice.hpp"
#include "qcal/runtime.hpp"
#include "qcal/scheduler.hpp"

namespace qcal {

/// Deformation applied before a Monte Carlo run.
enum class McScenario { Pristine, IsolateNoEnlarge, IsolateAndEnlarge };
std::string_view to_string(McScenario s);
McScenario mc_scenario_from_string(std::string_view s);

struct McConfig {
    std::vector<int> distances{3, 5};
    std::vector<double> p{0.005};
    long long shots = 100000;
    std::vector<McScenario> scenarios{McScenario::Pristine};
};

/// Everything a run depends on besides the command.
struct RunConfig {
    Topology topology = Topology::Square;
    int d = 5;
    int margin = 2;
    uint64_t seed = 1;
    DeviceParams device;
    SchedulerConfig scheduler;
    RuntimeOptions runtime;
    std::vector<LogicalProgram> programs;
    std::vector<Policy> policies{Policy::NoChange, Policy::Lsc, Policy::CaliScalpel};
    McConfig mc;

    /// Throws ValidationError naming the first bad field.
    void validate() const;
    nlohmann::json to_json() const;
    /// Missing keys keep their defaults; the result is validated.
    static RunConfig from_json(const nlohmann::json &j);
};

/// Parses a JSON file; IoError when unreadable, ValidationError when malformed.
nlohmann::json read_json_file(const std::string &path);

}  // namespace qcal
