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


#include "qcal/config.hpp"

#include <fstream>
#include <set>

#include "qcal/error.hpp"

namespace qcal {

namespace {

void require(bool ok, const std::string &msg) {
    if (!ok) {
        throw ValidationError(msg);
    }
}

bool safe_name(const std::string &s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') {
            return false;
        }
    }
    return true;
}

}  // namespace

std::string_view to_string(McScenario s) {
    switch (s) {
        case McScenario::Pristine:
            return "pristine";
        case McScenario::IsolateNoEnlarge:
            return "isolate-bulk-no-enlarge";
        case McScenario::IsolateAndEnlarge:
            return "isolate-and-enlarge";
    }
    return "";
}

McScenario mc_scenario_from_string(std::string_view s) {
    for (auto v : {McScenario::Pristine, McScenario::IsolateNoEnlarge, McScenario::IsolateAndEnlarge}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw ValidationError("unknown mc scenario: " + std::string(s));
}

void RunConfig::validate() const {
    require(d >= 3 && d % 2 == 1 && d <= 41, "d must be odd in [3, 41]");
    require(margin >= 0 && margin <= 10, "margin must lie in [0, 10]");
    device.validate();
    require(scheduler.ler_tar > 0 && scheduler.ler_tar < 1, "scheduler.ler_tar must lie in (0, 1)");
    require(scheduler.target_d == 0 || (scheduler.target_d >= 3 && scheduler.target_d % 2 == 1),
            "scheduler.target_d must be 0 or odd and at least 3");
    require(scheduler.horizon_h > 0, "scheduler.horizon_h must be positive");
    std::set<std::string> names;
    for (const auto &p : programs) {
        p.validate();
        require(safe_name(p.name), "program name must be non-empty [A-Za-z0-9_-]: '" + p.name + "'");
        require(names.insert(p.name).second, "duplicate program name: " + p.name);
    }
    require(!policies.empty(), "policies must not be empty");
    require(!mc.distances.empty(), "mc.distances must not be empty");
    for (int md : mc.distances) {
        require(md >= 3 && md % 2 == 1 && md <= 11, "mc.distances must be odd in [3, 11]");
    }
    require(!mc.p.empty(), "mc.p must not be empty");
    for (double p : mc.p) {
        require(p >= 0 && p <= 0.5, "mc.p must lie in [0, 0.5]");
    }
    require(mc.shots >= 1, "mc.shots must be at least 1");
    require(!mc.scenarios.empty(), "mc.scenarios must not be empty");
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json progs = nlohmann::json::array();
    for (const auto &p : programs) {
        progs.push_back(p.to_json());
    }
    std::vector<std::string> pols;
    for (Policy p : policies) {
        pols.emplace_back(to_string(p));
    }
    std::vector<std::string> scen;
    for (McScenario s : mc.scenarios) {
        scen.emplace_back(to_string(s));
    }
    return {{"topology", std::string(to_string(topology))},
            {"d", d},
            {"margin", margin},
            {"seed", seed},
            {"device", device.to_json()},
            {"scheduler", scheduler.to_json()},
            {"runtime", runtime.to_json()},
            {"programs", progs},
            {"policies", pols},
            {"mc", {{"distances", mc.distances}, {"p", mc.p}, {"shots", mc.shots}, {"scenarios", scen}}}};
}

RunConfig RunConfig::from_json(const nlohmann::json &j) {
    try {
        require(j.is_object(), "config must be a JSON object");
        RunConfig c;
        if (j.contains("topology")) {
            c.topology = topology_from_string(j.at("topology").get<std::string>());
        }
        c.d = j.value("d", c.d);
        c.margin = j.value("margin", c.margin);
        c.seed = j.value("seed", c.seed);
        c.device = DeviceParams::from_json(j.value("device", nlohmann::json::object()));
        c.scheduler = SchedulerConfig::from_json(j.value("scheduler", nlohmann::json::object()));
        c.runtime = RuntimeOptions::from_json(j.value("runtime", nlohmann::json::object()));
        for (const auto &p : j.value("programs", nlohmann::json::array())) {
            c.programs.push_back(LogicalProgram::from_json(p));
        }
        if (j.contains("policies")) {
            c.policies.clear();
            for (const auto &p : j.at("policies")) {
                c.policies.push_back(policy_from_string(p.get<std::string>()));
            }
        }
        const nlohmann::json m = j.value("mc", nlohmann::json::object());
        c.mc.distances = m.value("distances", c.mc.distances);
        c.mc.p = m.value("p", c.mc.p);
        c.mc.shots = m.value("shots", c.mc.shots);
        if (m.contains("scenarios")) {
            c.mc.scenarios.clear();
            for (const auto &s : m.at("scenarios")) {
                c.mc.scenarios.push_back(mc_scenario_from_string(s.get<std::string>()));
            }
        }
        c.validate();
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed config: ") + e.what());
    }
}

nlohmann::json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ValidationError(path + ": " + e.what());
    }
}

}  // namespace qcal
