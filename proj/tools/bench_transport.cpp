// Benchmark: batch of independent monodromy transports, serial reference vs
// the OpenMP kernel, with a bitwise agreement check.

#include <chrono>
#include <cstdio>
#include <vector>

#include "mono/parallel.hpp"
#include "mono/stokes.hpp"

using namespace mono;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::vector<RationalPotential> make_batch(int n) {
    std::vector<RationalPotential> out;
    for (int i = 0; i < n; ++i) {
        double t = 0.1 + 0.9 * i / n;
        // Scaled cubic families; each job integrates several Stokes sectors.
        out.push_back(RationalPotential::make(
            Polynomial({Complex{-1.0 / (t * t)}, Complex{0.2 * t}, Complex{0.0}, Complex{1.0 / (t * t)}}),
            Polynomial({Complex{1.0}})));
    }
    return out;
}

struct RunResult {
    double seconds;
    std::vector<CoordinateTuple> tuples;
};

RunResult run(const std::vector<RationalPotential>& batch, ExecMode mode) {
    IntegratorConfig cfg;
    RunResult res;
    res.tuples.resize(batch.size());
    double t0 = now_seconds();
    parallel_for(
        (int)batch.size(),
        [&](int i) {
            BuildResult b = build_framed(batch[i], nullptr, nullptr, cfg, ExecMode::Serial);
            res.tuples[i] = coordinates(b.system, b.tri);
        },
        mode);
    res.seconds = now_seconds() - t0;
    return res;
}

} // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 96;
    std::vector<RationalPotential> batch = make_batch(n);

    RunResult serial = run(batch, ExecMode::Serial);
    RunResult openmp = run(batch, ExecMode::OpenMP);

    bool identical = true;
    for (size_t i = 0; i < batch.size(); ++i) {
        for (const auto& [e, v] : serial.tuples[i].values) {
            CrossRatio w = openmp.tuples[i].at(e);
            identical = identical && v.kind == w.kind && v.value == w.value;
        }
    }

    std::printf("batch of %d framed builds\n", n);
    std::printf("serial reference: %8.3f s\n", serial.seconds);
    std::printf("openmp kernel:    %8.3f s\n", openmp.seconds);
    std::printf("speedup:          %8.2fx\n", serial.seconds / openmp.seconds);
    std::printf("bitwise identical results: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
