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

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>

#include "qcal/error.hpp"
#include "qcal/runtime.hpp"

namespace qcal {

namespace {

constexpr int kAll = -1;

struct Phase {
    double t0 = 0;
    double t1 = 0;
    int d_eff = 0;
    long long qubits = 0;
    /// Gate positions reset at t0; a single kAll resets every gate.
    std::vector<int> resets;
    /// Gate positions left out of the average.
    std::vector<int> excluded;
    /// Rates held at their t0 values.
    bool frozen = false;
    bool firing = false;
    std::string event;
};

class Patch {
  public:
    Patch(const DeviceModel &device, const std::vector<int> &ids) : device_(device), ids_(ids), last_(ids.size(), 0.0) {}

    size_t size() const { return ids_.size(); }
    double p(size_t i, double t) const { return drift_error_rate(device_.gate(ids_[i]), t - last_[i]); }

    double average(double t, const std::vector<char> &skip) const {
        double s = 0;
        size_t n = 0;
        for (size_t i = 0; i < ids_.size(); ++i) {
            if (!skip[i]) {
                s += p(i, t);
                ++n;
            }
        }
        return n ? s / static_cast<double>(n) : 0.0;
    }

    double peak(double t) const {
        double m = 0;
        for (size_t i = 0; i < ids_.size(); ++i) {
            m = std::max(m, p(i, t));
        }
        return m;
    }

    void reset(const std::vector<int> &which, double t) {
        if (which.size() == 1 && which[0] == kAll) {
            std::fill(last_.begin(), last_.end(), t);
            return;
        }
        for (int i : which) {
            last_[static_cast<size_t>(i)] = t;
        }
    }

  private:
    const DeviceModel &device_;
    std::vector<int> ids_;
    std::vector<double> last_;
};

std::vector<int> scheduled_gates(const Schedule &s) {
    std::vector<int> ids;
    for (const auto &[k, g] : s.groups.groups) {
        ids.insert(ids.end(), g.begin(), g.end());
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

// Time after a common reset at which the mean rate reaches p_tar.
double mean_crossing(const DeviceModel &device, const std::vector<int> &ids, double p_tar) {
    auto mean = [&](double t) {
        double s = 0;
        for (int id : ids) {
            s += drift_error_rate(device.gate(id), t);
        }
        return s / static_cast<double>(ids.size());
    };
    double lo = 0;
    double hi = 0;
    for (int id : ids) {
        hi = std::max(hi, drift_time_to_target(device.gate(id), p_tar));
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mean(mid) < p_tar ? lo : hi) = mid;
    }
    return hi;
}

// Wall time to calibrate every gate with conflicts as the only constraint.
double full_calibration_wall(const DeviceModel &device, const std::vector<int> &ids, const SurfaceCode &code) {
    auto clusters = cluster_dependencies(ids, device);
    for (auto &c : clusters) {
        c.footprint.clear();
    }
    const auto conf = cluster_conflicts(clusters, conflicts(device));
    return greedy_batches(clusters, conf, INT_MAX, code, std::numeric_limits<double>::infinity()).wall_h;
}

}  // namespace

RunResult simulate(const LogicalProgram &program, const DeviceModel &device, const Schedule &schedule,
                   const SurfaceCode &code, Policy policy, const RuntimeOptions &opts) {
    program.validate();
    const std::vector<int> ids = scheduled_gates(schedule);
    if (ids.empty()) {
        throw ValidationError("schedule has no gates");
    }
    for (int id : ids) {
        if (id < 0 || static_cast<size_t>(id) >= device.gates().size()) {
            throw ValidationError("schedule names gate " + std::to_string(id) + " missing from the device");
        }
    }
    std::vector<int> pos_of(device.gates().size(), -1);
    for (size_t i = 0; i < ids.size(); ++i) {
        pos_of[static_cast<size_t>(ids[i])] = static_cast<int>(i);
    }
    const double D = program.duration_h(opts.cycle_us);
    const double p_tar = schedule.target.p_tar;
    const long long base = program.n_logical * patch_qubits(device.lattice().topology(), program.d);
    const int d_sched = std::max(1, device.lattice().distance());

    RetryRiskReport rep;
    rep.policy = policy;
    rep.program = program.name;
    rep.nominal_h = D;
    rep.exec_time_h = D;
    rep.qubits = base;

    std::vector<Phase> phases;
    std::vector<int> pending;
    if (policy == Policy::NoChange) {
        phases.push_back({0, D, program.d, base, {}, {}, false, false, "start"});
    } else if (policy == Policy::CaliScalpel) {
        if (D > schedule.horizon_h * (1 + 1e-12)) {
            throw ValidationError("schedule horizon is shorter than the program");
        }
        double t = 0;
        std::string ev = "start";
        for (const auto &f : schedule.firings) {
            if (f.t_h >= D) {
                break;
            }
            phases.push_back({t, f.t_h, program.d, base, pending, {}, false, false, ev});
            pending.clear();
            double s = f.t_h;
            bool first = true;
            for (const auto &b : f.plan.batches) {
                if (s >= D) {
                    break;
                }
                Phase ph{s, std::min(D, s + b.duration_h), program.d, base, pending, {}, false, first,
                         first ? "firing" : "batch"};
                for (int g : b.gates) {
                    ph.excluded.push_back(pos_of.at(static_cast<size_t>(g)));
                }
                const bool restored = opts.enlarge && b.enlarge_qubits >= 0 && (b.enlarge_qubits > 0 || b.delta_d == 0);
                if (restored) {
                    ph.qubits += program.n_logical *
                                 static_cast<long long>(std::ceil(static_cast<double>(b.enlarge_qubits) * program.d / d_sched));
                } else {
                    ph.d_eff = std::max(1, program.d - b.delta_d);
                }
                rep.qubits = std::max(rep.qubits, ph.qubits);
                rep.calibrations += static_cast<long long>(b.gates.size());
                pending = ph.excluded;
                phases.push_back(std::move(ph));
                s += b.duration_h;
                first = false;
            }
            t = s;
            ev = "resume";
            if (t >= D) {
                break;
            }
        }
        if (t < D) {
            phases.push_back({t, D, program.d, base, pending, {}, false, false, ev});
        }
    } else {
        const double tau = opts.lsc_trigger == LscTrigger::WorstGate ? [&] {
            double m = std::numeric_limits<double>::infinity();
            for (int id : ids) {
                m = std::min(m, drift_time_to_target(device.gate(id), p_tar));
            }
            return m;
        }()
                                                                     : mean_crossing(device, ids, p_tar);
        if (!(tau > 0) || D / tau > 1e6) {
            throw InfeasibleError("calibration interval too short for the program");
        }
        const double stall = 2 * opts.lsc_swap_h + full_calibration_wall(device, ids, code);
        rep.qubits = static_cast<long long>(
            std::llround(static_cast<double>(base) * (1.0 + opts.lsc_spare_fraction + opts.lsc_routing_fraction)));
        double progress = 0;
        double t = 0;
        std::string ev = "start";
        while (progress < D) {
            const double run = std::min(tau, D - progress);
            phases.push_back({t, t + run, program.d, rep.qubits, pending, {}, false, false, ev});
            pending.clear();
            progress += run;
            t += run;
            if (progress >= D) {
                break;
            }
            phases.push_back({t, t + stall, program.d, rep.qubits, {}, {}, true, false, "stall"});
            t += stall;
            pending = {kAll};
            rep.calibrations += static_cast<long long>(ids.size());
            ev = "resume";
        }
        rep.exec_time_h = t;
    }

    Patch patch(device, ids);
    RunResult out;
    const double dt = opts.sample_dt_h;
    const double rate = program.n_logical * kCyclesPerHour / opts.cycle_us;
    double log_survival = 0;
    std::vector<char> skip(ids.size(), 0);
    auto ler_of = [&](int d_eff, double p) { return p > 0 ? ler_analytic(d_eff, p, opts.alpha, opts.p_th) : 0.0; };
    for (const Phase &ph : phases) {
        patch.reset(ph.resets, ph.t0);
        if (ph.firing) {
            rep.peak_gate_p_at_firing = std::max(rep.peak_gate_p_at_firing, patch.peak(ph.t0));
        }
        if (!(ph.t1 > ph.t0)) {
            continue;
        }
        std::fill(skip.begin(), skip.end(), 0);
        for (int i : ph.excluded) {
            skip[static_cast<size_t>(i)] = 1;
        }
        auto p_at = [&](double t) { return patch.average(ph.frozen ? ph.t0 : t, skip); };
        std::vector<double> ts{ph.t0};
        for (double k = std::floor(ph.t0 / dt) + 1;; k += 1) {
            const double t = k * dt;
            if (t >= ph.t1 - 1e-12) {
                break;
            }
            if (t > ts.back() + 1e-12) {
                ts.push_back(t);
            }
        }
        ts.push_back(ph.t1);
        double p_next = p_at(ts[0]);
        for (size_t i = 0; i + 1 < ts.size(); ++i) {
            const double p = p_next;
            const double ler = ler_of(ph.d_eff, p);
            out.timeline.push_back({ts[i], p, ph.d_eff, ler, ph.qubits, i == 0 ? ph.event : std::string()});
            p_next = p_at(ts[i + 1]);
            const double seg = std::max(ler, ler_of(ph.d_eff, p_next));
            rep.peak_ler = std::max(rep.peak_ler, seg);
            log_survival += seg >= 1 ? -std::numeric_limits<double>::infinity()
                                     : rate * (ts[i + 1] - ts[i]) * std::log1p(-seg);
        }
    }
    if (!phases.empty()) {
        const Phase &last = phases.back();
        std::fill(skip.begin(), skip.end(), 0);
        for (int i : last.excluded) {
            skip[static_cast<size_t>(i)] = 1;
        }
        const double p = patch.average(last.frozen ? last.t0 : last.t1, skip);
        out.timeline.push_back({last.t1, p, last.d_eff, ler_of(last.d_eff, p), last.qubits, "end"});
    }
    rep.retry_risk = -std::expm1(log_survival);
    out.report = rep;
    return out;
}

}  // namespace qcal
