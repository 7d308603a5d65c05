#pragma once

#include <vector>

#include "mono/projective.hpp"

namespace mono {

// One smooth piece of a planar path: a line segment or a circular arc.
// Arcs are parametrized by angle from theta0 to theta1 (counterclockwise when
// theta1 > theta0).
struct PathSegment {
    enum class Kind { Line, Arc };
    Kind kind = Kind::Line;
    Complex z0{0.0}, z1{0.0};      // line endpoints
    Complex center{0.0};            // arc data
    double radius = 0.0, theta0 = 0.0, theta1 = 0.0;

    static PathSegment line(Complex a, Complex b) { return {Kind::Line, a, b, {}, 0, 0, 0}; }
    static PathSegment arc(Complex c, double r, double a0, double a1) {
        return {Kind::Arc, {}, {}, c, r, a0, a1};
    }

    Complex at(double t) const;        // t in [0, 1]
    Complex velocity(double t) const;  // dz/dt
    Complex start() const { return at(0.0); }
    Complex end() const { return at(1.0); }
    double length() const;
    double distance_to(Complex p) const;
};

struct PlanarPath {
    std::vector<PathSegment> segments;

    static PlanarPath line(Complex a, Complex b);
    // Full counterclockwise circle based at center + radius (angle 0).
    static PlanarPath circle(Complex center, double radius);

    PlanarPath& then_line_to(Complex b);

    Complex start() const;
    Complex end() const;
    bool closed(double tol = 1e-12) const;
    double length() const;
    // Minimum distance from the path to any of the given points.
    double clearance(const std::vector<Complex>& poles) const;
    void check_continuity() const;
};

} // namespace mono
