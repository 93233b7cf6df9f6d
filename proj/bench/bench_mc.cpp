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


// Times the serial and OpenMP estimators on one code and checks they agree.

#include <chrono>
#include <cstdio>
#include <memory>

#include <omp.h>

#include "CLI11.hpp"
#include "qcal/mc_decoder.hpp"

using namespace qcal;

namespace {

template <class F>
double seconds(F &&f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Monte Carlo estimator benchmark"};
    int d = 5;
    double p = 0.005;
    long long shots = 200000;
    uint64_t seed = 1;
    app.add_option("-d,--distance", d, "code distance")->check(CLI::Range(3, 25));
    app.add_option("-p,--noise", p, "flip probability")->check(CLI::Range(0.0, 0.5));
    app.add_option("-n,--shots", shots, "shots")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "run seed");
    CLI11_PARSE(app, argc, argv);

    auto code = SurfaceCode::construct(std::make_shared<const Lattice>(Lattice::build(Topology::Square, d)));
    const NoiseModel noise{p};
    LerEstimate serial, parallel;
    const double ts = seconds([&] { serial = estimate_ler_serial(code, noise, shots, seed); });
    const double tp = seconds([&] { parallel = estimate_ler(code, noise, shots, seed); });
    const bool same = serial.failures == parallel.failures && serial.discarded == parallel.discarded &&
                      serial.inconsistent == parallel.inconsistent;
    std::printf("d=%d p=%g shots=%lld threads=%d\n", d, p, shots, omp_get_max_threads());
    std::printf("serial   %8.3f s  ler %.4g\n", ts, serial.ler);
    std::printf("openmp   %8.3f s  ler %.4g\n", tp, parallel.ler);
    std::printf("speedup  %8.2f x  %s\n", ts / tp, same ? "identical" : "MISMATCH");
    return same ? 0 : 1;
}
