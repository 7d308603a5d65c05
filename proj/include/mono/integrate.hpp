#pragma once

#include <array>

#include "mono/path.hpp"
#include "mono/potential.hpp"

namespace mono {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    double max_step = 0.0;          // cap on |dz| per step; 0 = segment length
    double renorm_threshold = 1e120;
    double wkb_decay_target = 25.0;
    double seed_radius_max = 1e4;

    void validate() const {
        if (!(rel_tol > 0 && rel_tol < 1) || !(abs_tol > 0 && abs_tol < 1))
            fail(ErrorKind::InvalidInput, "integrator tolerances must lie in (0, 1)");
        if (!(wkb_decay_target > 10))
            fail(ErrorKind::InvalidInput, "wkb decay target must exceed 10");
    }
};

// Fundamental 2x2 transport of Y' = -A(z) Y, A = [[0,1],[phi,0]], along a
// path, with state (y, -y'). Solutions are renormalized by a scalar whenever
// entries exceed renorm_threshold; the accumulated log factor is reported and
// is irrelevant projectively.
struct TransportResult {
    // Row-major matrix: Y_end (up to exp(log_scale)).
    std::array<Complex, 4> matrix{Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}};
    double log_scale = 0.0;
    // |log det Y_end + 2 log_scale - log det Y_0|. Meaningful on transports of
    // bounded dynamic range (loops around poles, short crossings); when the
    // columns grow by e^L the determinant is a cancellation of e^{2L} terms
    // and the measured drift saturates at machine epsilon times e^{2L}.
    double wronskian_drift = 0.0;
    long steps = 0;
    long rejected = 0;

    ProjectiveMap map() const { return {matrix[0], matrix[1], matrix[2], matrix[3]}; }
};

TransportResult integrate(const RationalPotential& phi, const PlanarPath& path,
                          const std::array<Complex, 4>& y0, const IntegratorConfig& cfg);

// Single-solution transport of the same system.
struct VectorTransport {
    std::array<Complex, 2> v{Complex{1.0}, Complex{0.0}};
    double log_scale = 0.0;
    long steps = 0;
    long rejected = 0;

    ProjectivePoint line() const { return ProjectivePoint{v[0], v[1]}.normalized(); }
};

VectorTransport integrate_vector(const RationalPotential& phi, const PlanarPath& path,
                                 const std::array<Complex, 2>& v0, const IntegratorConfig& cfg);

// Fundamental transport around a closed loop, projectivized.
ProjectiveMap monodromy(const RationalPotential& phi, const PlanarPath& loop,
                        const IntegratorConfig& cfg, TransportResult* diagnostics = nullptr);

// Minimum pairwise distance among the finite pole locations (1 when fewer
// than two).
double pole_spacing(const std::vector<PoleRecord>& poles);
std::vector<Complex> finite_pole_locations(const std::vector<PoleRecord>& poles);

} // namespace mono
