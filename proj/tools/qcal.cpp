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


// Command-line front end: characterize, schedule, simulate, mc, validate.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcal/config.hpp"
#include "qcal/deform.hpp"
#include "qcal/error.hpp"
#include "qcal/mc_decoder.hpp"

using namespace qcal;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string config;
    std::optional<uint64_t> seed;
    std::string out = ".";
    std::vector<std::string> policies;
    bool future = false;
    std::string device_file;
    std::string schedule_file;
};

void write_file(const fs::path &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text) || !f.flush()) {
        throw IoError("cannot write " + path.string());
    }
}

std::string dump(const nlohmann::json &j) { return j.dump(2) + "\n"; }

RunConfig load(const Options &o) {
    nlohmann::json j = o.config.empty() ? nlohmann::json::object() : read_json_file(o.config);
    RunConfig c = RunConfig::from_json(j);
    if (o.seed) {
        c.seed = *o.seed;
    }
    if (o.future) {
        c.device.mean_t_drift_h = kFutureMeanDriftHours;
    }
    if (!o.policies.empty()) {
        c.policies.clear();
        for (const auto &p : o.policies) {
            c.policies.push_back(policy_from_string(p));
        }
    }
    c.validate();
    return c;
}

fs::path prepare_out(const Options &o, const RunConfig &c) {
    fs::path dir(o.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string());
    }
    write_file(dir / "effective_config.json", dump(c.to_json()));
    return dir;
}

DeviceModel device_for(const Options &o, const RunConfig &c) {
    if (!o.device_file.empty()) {
        try {
            return DeviceModel::from_json(read_json_file(o.device_file));
        } catch (const nlohmann::json::exception &e) {
            throw ValidationError(o.device_file + ": " + e.what());
        }
    }
    auto L = std::make_shared<const Lattice>(Lattice::build(c.topology, c.d, c.margin));
    return synthesize_device(L, c.device, c.seed);
}

Schedule schedule_for(const Options &o, const RunConfig &c, const DeviceModel &dev, const SurfaceCode &code) {
    if (!o.schedule_file.empty()) {
        return Schedule::from_json(read_json_file(o.schedule_file));
    }
    return build_schedule(dev, code, c.scheduler);
}

}  // namespace

namespace {

int cmd_characterize(const Options &o) {
    RunConfig c = load(o);
    fs::path dir = prepare_out(o, c);
    DeviceModel dev = device_for(o, c);
    write_file(dir / "device.json", dump(dev.to_json()));
    double mean = 0;
    for (const auto &g : dev.gates()) {
        mean += g.t_drift_h;
    }
    mean /= static_cast<double>(dev.gates().size());
    std::printf("device: %zu gates, %zu qubits, mean drift %.4f h\n", dev.gates().size(), dev.lattice().num_qubits(),
                mean);
    return 0;
}

int cmd_schedule(const Options &o) {
    RunConfig c = load(o);
    fs::path dir = prepare_out(o, c);
    DeviceModel dev = device_for(o, c);
    SurfaceCode code = SurfaceCode::construct(dev.lattice_ptr());
    Schedule s = build_schedule(dev, code, c.scheduler);
    write_file(dir / "schedule.json", dump(s.to_json()));
    std::printf("p_tar %.6g, t_cali %.6g h, %zu groups, %.6g calibrations/h, %zu firings\n", s.target.p_tar,
                s.groups.t_cali_h, s.groups.groups.size(), frequency(s.groups), s.firings.size());
    return 0;
}

int cmd_validate(const Options &o) {
    RunConfig c = load(o);
    fs::path dir = prepare_out(o, c);
    DeviceModel dev = device_for(o, c);
    SurfaceCode code = SurfaceCode::construct(dev.lattice_ptr());
    Schedule s = schedule_for(o, c, dev, code);
    auto bad = validate_schedule(s, dev, code);
    write_file(dir / "validation.json", dump({{"ok", bad.empty()}, {"violations", bad}}));
    for (const auto &b : bad) {
        std::fprintf(stderr, "violation: %s\n", b.c_str());
    }
    std::printf("%s: %zu violations\n", bad.empty() ? "valid" : "invalid", bad.size());
    return bad.empty() ? 0 : 2;
}

int cmd_simulate(const Options &o) {
    RunConfig c = load(o);
    if (c.programs.empty()) {
        throw ValidationError("programs must not be empty for simulate");
    }
    fs::path dir = prepare_out(o, c);
    DeviceModel dev = device_for(o, c);
    SurfaceCode code = SurfaceCode::construct(dev.lattice_ptr());
    Schedule s = schedule_for(o, c, dev, code);
    nlohmann::json reports = nlohmann::json::array();
    std::ostringstream table;
    table << "program,policy,retry_risk,peak_ler,nominal_h,exec_time_h,qubits,calibrations\n";
    for (const auto &prog : c.programs) {
        for (Policy pol : c.policies) {
            RunResult r = simulate(prog, dev, s, code, pol, c.runtime);
            write_file(dir / ("timeline_" + prog.name + "_" + std::string(to_string(pol)) + ".csv"), r.csv());
            reports.push_back(r.report.to_json());
            char line[512];
            std::snprintf(line, sizeof line, "%s,%s,%.17g,%.17g,%.17g,%.17g,%lld,%lld\n", prog.name.c_str(),
                          std::string(to_string(pol)).c_str(), r.report.retry_risk, r.report.peak_ler,
                          r.report.nominal_h, r.report.exec_time_h, r.report.qubits,
                          r.report.calibrations);
            table << line;
            std::printf("%-12s %-12s risk %.4g  time %.4g h  qubits %lld\n", prog.name.c_str(),
                        std::string(to_string(pol)).c_str(), r.report.retry_risk, r.report.exec_time_h,
                        r.report.qubits);
        }
    }
    write_file(dir / "report.json", dump(reports));
    write_file(dir / "summary.csv", table.str());
    return 0;
}

SurfaceCode mc_code(const RunConfig &c, McScenario sc, int d) {
    if (sc == McScenario::Pristine) {
        return SurfaceCode::construct(std::make_shared<const Lattice>(Lattice::build(c.topology, d)));
    }
    auto L = std::make_shared<const Lattice>(Lattice::build(c.topology, d, std::max(c.margin, 2)));
    Deformer def(SurfaceCode::construct(L));
    def.data_q_rm(L->data_at(L->patch().row0 + d / 2, L->patch().col0 + d / 2));
    if (sc == McScenario::IsolateAndEnlarge) {
        enlarge_to_distance(def, d);
    }
    return def.code();
}

int cmd_mc(const Options &o) {
    RunConfig c = load(o);
    fs::path dir = prepare_out(o, c);
    std::ostringstream csv;
    csv << "scenario,d,p,shots,ler,stderr,discarded,inconsistent\n";
    for (McScenario sc : c.mc.scenarios) {
        for (int d : c.mc.distances) {
            SurfaceCode code = mc_code(c, sc, d);
            for (double p : c.mc.p) {
                LerEstimate e = estimate_ler(code, {p}, c.mc.shots, c.seed);
                char line[256];
                std::snprintf(line, sizeof line, "%s,%d,%.17g,%lld,%.17g,%.17g,%lld,%lld\n",
                              std::string(to_string(sc)).c_str(), d, p, e.shots, e.ler, e.stderr_, e.discarded,
                              e.inconsistent);
                csv << line;
                std::printf("%-24s d=%d p=%g ler %.4g +- %.2g\n", std::string(to_string(sc)).c_str(), d, p, e.ler,
                            e.stderr_);
            }
        }
    }
    write_file(dir / "mc.csv", csv.str());
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Drift-aware calibration scheduling for surface-code patches"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App *sub) {
        sub->add_option("--config", o.config, "run configuration JSON");
        sub->add_option("--seed", o.seed, "device and sampling seed");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--policy", o.policies, "policy to run (repeatable)")
            ->check(CLI::IsMember({"no-change", "lsc", "caliscalpel"}));
        sub->add_flag("--future-model", o.future, "mean drift of 28.016 h");
    };
    using Cmd = int (*)(const Options &);
    std::vector<std::pair<CLI::App *, Cmd>> cmds;
    auto *ch = app.add_subcommand("characterize", "synthesize and write a device profile");
    cmds.emplace_back(ch, cmd_characterize);
    auto *sc = app.add_subcommand("schedule", "build the calibration schedule");
    cmds.emplace_back(sc, cmd_schedule);
    auto *si = app.add_subcommand("simulate", "run programs under each policy");
    cmds.emplace_back(si, cmd_simulate);
    auto *mc = app.add_subcommand("mc", "Monte Carlo logical error rates");
    cmds.emplace_back(mc, cmd_mc);
    auto *va = app.add_subcommand("validate", "check a schedule against the device");
    cmds.emplace_back(va, cmd_validate);
    for (auto &[sub, fn] : cmds) {
        common(sub);
    }
    for (auto *sub : {sc, si, va}) {
        sub->add_option("--device", o.device_file, "device JSON instead of synthesizing one");
    }
    for (auto *sub : {si, va}) {
        sub->add_option("--schedule", o.schedule_file, "schedule JSON instead of building one");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        for (auto &[sub, fn] : cmds) {
            if (sub->parsed()) {
                return fn(o);
            }
        }
    } catch (const ValidationError &e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const InfeasibleError &e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return 3;
    } catch (const IoError &e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
