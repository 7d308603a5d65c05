#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mono/cluster.hpp"

namespace mono::testing {

// Deterministic 64-bit generator (splitmix64); distribution code stays ours
// so frozen expected values survive standard-library changes.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return (double)(next() >> 11) * 0x1.0p-53; } // [0,1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int pick(int n) { return (int)(next() % (uint64_t)n); }

    Complex unit_disc() {
        double r = std::sqrt(uniform());
        double th = uniform(0.0, 2.0 * M_PI);
        return {r * std::cos(th), r * std::sin(th)};
    }
    // Log-uniform modulus in [lo, hi], uniform phase.
    Complex log_uniform(double lo = 1e-2, double hi = 1e2) {
        double m = std::exp(uniform(std::log(lo), std::log(hi)));
        double th = uniform(0.0, 2.0 * M_PI);
        return {m * std::cos(th), m * std::sin(th)};
    }
};

inline CoordinateTuple random_tuple(const IdealTriangulation& T, Rng& rng, double lo = 1e-2,
                                    double hi = 1e2) {
    CoordinateTuple X;
    for (EdgeId a : T.arcs()) X.values[a] = CrossRatio::of(rng.log_uniform(lo, hi));
    return X;
}

inline double rel_diff(Complex a, Complex b) {
    return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

inline double tuple_rel_diff(const CoordinateTuple& X, const CoordinateTuple& Y) {
    double worst = 0.0;
    for (const auto& [e, v] : X.values) {
        CrossRatio w = Y.at(e);
        if (v.kind != w.kind) return INFINITY;
        if (v.kind == CrossRatio::Kind::Value) worst = std::max(worst, rel_diff(v.value, w.value));
    }
    return worst;
}

inline std::vector<MarkedBorderedSurface> catalog() {
    std::vector<MarkedBorderedSurface> out;
    for (int k = 3; k <= 8; ++k) out.push_back({0, {k}, 0});
    for (int k = 1; k <= 5; ++k) out.push_back({0, {k}, 1});
    out.push_back({0, {1, 1}, 0});
    out.push_back({0, {2, 1}, 0});
    out.push_back({1, {}, 1});
    out.push_back({0, {}, 4});
    return out;
}

} // namespace mono::testing
