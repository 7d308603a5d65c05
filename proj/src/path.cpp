#include "mono/path.hpp"

#include <algorithm>
#include <cmath>

namespace mono {

Complex PathSegment::at(double t) const {
    if (kind == Kind::Line) return z0 + t * (z1 - z0);
    double th = theta0 + t * (theta1 - theta0);
    return center + radius * Complex{std::cos(th), std::sin(th)};
}

Complex PathSegment::velocity(double t) const {
    if (kind == Kind::Line) return z1 - z0;
    double th = theta0 + t * (theta1 - theta0);
    return (theta1 - theta0) * radius * Complex{-std::sin(th), std::cos(th)};
}

double PathSegment::length() const {
    if (kind == Kind::Line) return std::abs(z1 - z0);
    return std::abs(theta1 - theta0) * radius;
}

double PathSegment::distance_to(Complex p) const {
    if (kind == Kind::Line) {
        Complex d = z1 - z0;
        double len2 = std::norm(d);
        if (len2 == 0.0) return std::abs(p - z0);
        double t = std::clamp(((p - z0) * std::conj(d)).real() / len2, 0.0, 1.0);
        return std::abs(p - (z0 + t * d));
    }
    double lo = std::min(theta0, theta1), hi = std::max(theta0, theta1);
    double best = std::min(std::abs(p - at(0.0)), std::abs(p - at(1.0)));
    double ang = std::arg(p - center);
    for (double a = ang - 4.0 * M_PI; a <= hi + 1e-12; a += 2.0 * M_PI)
        if (a >= lo - 1e-12 && a <= hi + 1e-12)
            best = std::min(best, std::abs(std::abs(p - center) - radius));
    return best;
}

PlanarPath PlanarPath::line(Complex a, Complex b) {
    PlanarPath p;
    p.segments.push_back(PathSegment::line(a, b));
    return p;
}

PlanarPath PlanarPath::circle(Complex center, double radius) {
    PlanarPath p;
    p.segments.push_back(PathSegment::arc(center, radius, 0.0, 2.0 * M_PI));
    return p;
}

PlanarPath& PlanarPath::then_line_to(Complex b) {
    segments.push_back(PathSegment::line(end(), b));
    return *this;
}

Complex PlanarPath::start() const {
    if (segments.empty()) fail(ErrorKind::InvalidInput, "empty path");
    return segments.front().start();
}

Complex PlanarPath::end() const {
    if (segments.empty()) fail(ErrorKind::InvalidInput, "empty path");
    return segments.back().end();
}

bool PlanarPath::closed(double tol) const {
    return std::abs(start() - end()) <= tol * (1.0 + std::abs(start()));
}

double PlanarPath::length() const {
    double s = 0.0;
    for (const auto& seg : segments) s += seg.length();
    return s;
}

double PlanarPath::clearance(const std::vector<Complex>& poles) const {
    double best = INFINITY;
    for (const auto& seg : segments)
        for (const auto& p : poles) best = std::min(best, seg.distance_to(p));
    return best;
}

void PlanarPath::check_continuity() const {
    for (size_t i = 1; i < segments.size(); ++i) {
        Complex a = segments[i - 1].end(), b = segments[i].start();
        if (std::abs(a - b) > 1e-9 * (1.0 + std::abs(a)))
            fail(ErrorKind::InvalidInput, "path segments do not share endpoints");
    }
}

} // namespace mono
