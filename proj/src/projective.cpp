#include "mono/projective.hpp"

#include <algorithm>
#include <cmath>

namespace mono {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateTriple: return "DegenerateTriple";
        case ErrorKind::IdentityMap: return "IdentityMap";
        case ErrorKind::SelfFoldedInterior: return "SelfFoldedInterior";
        case ErrorKind::NotAPuncture: return "NotAPuncture";
        case ErrorKind::UnsupportedSurface: return "UnsupportedSurface";
        case ErrorKind::TriangulationMismatch: return "TriangulationMismatch";
        case ErrorKind::NonRegularInput: return "NonRegularInput";
        case ErrorKind::MutationPole: return "MutationPole";
        case ErrorKind::NonSemisimpleHolonomy: return "NonSemisimpleHolonomy";
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::NoPoles: return "NoPoles";
        case ErrorKind::DegenerateSurface: return "DegenerateSurface";
        case ErrorKind::StepFailure: return "StepFailure";
        case ErrorKind::PathTooClose: return "PathTooClose";
        case ErrorKind::SeedNotFound: return "SeedNotFound";
        case ErrorKind::ResonantOrApparent: return "ResonantOrApparent";
        case ErrorKind::AmbiguousMatch: return "AmbiguousMatch";
        case ErrorKind::RealizationRequired: return "RealizationRequired";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
    }
    return "Unknown";
}

ProjectivePoint::ProjectivePoint(Complex a_, Complex b_) : a(a_), b(b_) {
    if (!finite(a) || !finite(b)) fail(ErrorKind::InvalidInput, "non-finite homogeneous coordinate");
    if (a == Complex{0.0} && b == Complex{0.0})
        fail(ErrorKind::InvalidInput, "(0,0) is not a point of P^1");
}

bool ProjectivePoint::is_infinite(double tol) const { return proj_equal(*this, infinity(), tol); }

double ProjectivePoint::norm() const { return std::hypot(std::abs(a), std::abs(b)); }

ProjectivePoint ProjectivePoint::normalized() const {
    if (std::abs(a) >= std::abs(b)) return {Complex{1.0}, b / a};
    return {a / b, Complex{1.0}};
}

Complex proj_det(const ProjectivePoint& p, const ProjectivePoint& q) { return p.a * q.b - q.a * p.b; }

bool proj_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tol) {
    return std::abs(proj_det(p, q)) <= tol * p.norm() * q.norm();
}

ProjectiveMap ProjectiveMap::from_rows(Complex a, Complex b, Complex c, Complex d) {
    ProjectiveMap m{a, b, c, d};
    if (!finite(a) || !finite(b) || !finite(c) || !finite(d))
        fail(ErrorKind::InvalidInput, "non-finite matrix entry");
    if (m.det() == Complex{0.0}) fail(ErrorKind::InvalidInput, "singular projective map");
    return m;
}

double ProjectiveMap::norm() const {
    return std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
}

ProjectiveMap ProjectiveMap::inverse() const { return {m11, -m01, -m10, m00}; }

ProjectiveMap ProjectiveMap::det_normalized() const {
    ProjectiveMap r = *this;
    // Skip the rescale when det is already 1 to machine precision; this makes
    // the normal form idempotent bit for bit.
    if (std::abs(det() - Complex{1.0}) > 64.0 * 2.220446049250313e-16) {
        Complex s = std::sqrt(det());
        r = ProjectiveMap{m00 / s, m01 / s, m10 / s, m11 / s};
    }
    const Complex* entries[4] = {&r.m00, &r.m01, &r.m10, &r.m11};
    int lead = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(*entries[i]) > std::abs(*entries[lead])) lead = i;
    Complex e = *entries[lead];
    bool flip = e.real() < 0.0 || (e.real() == 0.0 && e.imag() < 0.0);
    if (flip) { r.m00 = -r.m00; r.m01 = -r.m01; r.m10 = -r.m10; r.m11 = -r.m11; }
    return r;
}

ProjectiveMap operator*(const ProjectiveMap& l, const ProjectiveMap& r) {
    return {l.m00 * r.m00 + l.m01 * r.m10, l.m00 * r.m01 + l.m01 * r.m11,
            l.m10 * r.m00 + l.m11 * r.m10, l.m10 * r.m01 + l.m11 * r.m11};
}

ProjectivePoint apply(const ProjectiveMap& m, const ProjectivePoint& p) {
    // Renormalize first so repeated application cannot overflow.
    ProjectivePoint q = p.normalized();
    return {m.m00 * q.a + m.m01 * q.b, m.m10 * q.a + m.m11 * q.b};
}

bool map_equal(const ProjectiveMap& m, const ProjectiveMap& n, double tol) {
    ProjectiveMap d = m * n.inverse();
    double scale = std::max(std::abs(d.m00), std::abs(d.m11));
    return std::abs(d.m01) <= tol * scale && std::abs(d.m10) <= tol * scale &&
           std::abs(d.m00 - d.m11) <= tol * scale;
}

const char* map_class_name(MapClass c) {
    switch (c) {
        case MapClass::Identity: return "Identity";
        case MapClass::Parabolic: return "Parabolic";
        case MapClass::Semisimple: return "Semisimple";
    }
    return "?";
}

MapClass classify(const ProjectiveMap& m, double tol) {
    double scale = m.norm();
    bool scalar = std::abs(m.m01) <= tol * scale && std::abs(m.m10) <= tol * scale &&
                  std::abs(m.m00 - m.m11) <= tol * scale;
    if (tol == 0.0)
        scalar = m.m01 == Complex{0.0} && m.m10 == Complex{0.0} && m.m00 == m.m11;
    if (scalar) return MapClass::Identity;
    Complex t2 = m.trace() * m.trace();
    Complex d4 = 4.0 * m.det();
    if (tol == 0.0) return t2 == d4 ? MapClass::Parabolic : MapClass::Semisimple;
    return std::abs(t2 - d4) <= tol * std::abs(m.det()) ? MapClass::Parabolic : MapClass::Semisimple;
}

EigenLines fixed_lines(const ProjectiveMap& m, double tol) {
    MapClass cls = classify(m, tol);
    if (cls == MapClass::Identity) fail(ErrorKind::IdentityMap, "fixed_lines of a scalar map");
    ProjectiveMap u = m.det_normalized();
    Complex q = u.trace() / 2.0;
    auto line_for = [&](Complex mu) {
        // Both candidates span the eigenline in exact arithmetic; keep the
        // better conditioned one.
        double n1 = std::hypot(std::abs(u.m01), std::abs(mu - u.m00));
        double n2 = std::hypot(std::abs(mu - u.m11), std::abs(u.m10));
        return (n1 >= n2 ? ProjectivePoint{u.m01, mu - u.m00} : ProjectivePoint{mu - u.m11, u.m10})
            .normalized();
    };
    EigenLines out;
    if (cls == MapClass::Parabolic) {
        out.count = 1;
        out.value[0] = q;
        out.line[0] = line_for(q);
        return out;
    }
    Complex s = std::sqrt(q * q - 1.0);
    if ((std::conj(q) * s).real() < 0.0) s = -s; // |q + s| >= |q - s|
    Complex mu1 = q + s;
    Complex mu2 = 1.0 / mu1; // det = 1
    out.count = 2;
    out.value = {mu1, mu2};
    out.line = {line_for(mu1), line_for(mu2)};
    return out;
}

CrossRatio operator*(const CrossRatio& x, const CrossRatio& y) {
    using K = CrossRatio::Kind;
    if (x.kind == K::Indeterminate || y.kind == K::Indeterminate) return CrossRatio::indeterminate();
    if (x.kind == K::Zero) return y.kind == K::Infinite ? CrossRatio::indeterminate() : CrossRatio::zero();
    if (y.kind == K::Zero) return x.kind == K::Infinite ? CrossRatio::indeterminate() : CrossRatio::zero();
    if (x.kind == K::Infinite || y.kind == K::Infinite) return CrossRatio::infinite();
    return CrossRatio::of(x.value * y.value);
}

bool cross_ratio_close(const CrossRatio& x, const CrossRatio& y, double rel) {
    if (x.kind != y.kind) return false;
    if (x.kind != CrossRatio::Kind::Value) return true;
    return std::abs(x.value - y.value) <= rel * std::max({1e-300, std::abs(x.value), std::abs(y.value)});
}

CrossRatio cross_ratio(const ProjectivePoint& p1, const ProjectivePoint& p2,
                       const ProjectivePoint& p3, const ProjectivePoint& p4, double tol) {
    ProjectivePoint q1 = p1.normalized(), q2 = p2.normalized(), q3 = p3.normalized(), q4 = p4.normalized();
    bool num_zero = proj_equal(q1, q2, tol) || proj_equal(q3, q4, tol);
    bool den_zero = proj_equal(q2, q3, tol) || proj_equal(q1, q4, tol);
    if (num_zero && den_zero) return CrossRatio::indeterminate();
    if (num_zero) return CrossRatio::zero();
    if (den_zero) return CrossRatio::infinite();
    Complex num = proj_det(q1, q2) * proj_det(q3, q4);
    Complex den = proj_det(q2, q3) * proj_det(q1, q4);
    return CrossRatio::of(num / den);
}

namespace {

// Matrix sending the standard triple (1:0), (0:1), (1:1) to (a, b, c).
ProjectiveMap standard_to(const std::array<ProjectivePoint, 3>& t) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (proj_equal(t[i], t[j]))
                fail(ErrorKind::DegenerateTriple, "repeated point in projective triple");
    ProjectivePoint a = t[0].normalized(), b = t[1].normalized(), c = t[2].normalized();
    // Solve alpha * a + beta * b = c by Cramer's rule.
    Complex det = a.a * b.b - b.a * a.b;
    Complex alpha = (c.a * b.b - b.a * c.b) / det;
    Complex beta = (a.a * c.b - c.a * a.b) / det;
    return ProjectiveMap::from_rows(alpha * a.a, beta * b.a, alpha * a.b, beta * b.b);
}

} // namespace

ProjectiveMap map_from_triples(const std::array<ProjectivePoint, 3>& src,
                               const std::array<ProjectivePoint, 3>& dst) {
    return standard_to(dst) * standard_to(src).inverse();
}

ProjectivePoint solve_cross_ratio_p4(const ProjectivePoint& z1, const ProjectivePoint& z2,
                                     const ProjectivePoint& z3, Complex x) {
    ProjectivePoint q1 = z1.normalized(), q2 = z2.normalized(), q3 = z3.normalized();
    Complex d12 = proj_det(q1, q2), d23 = proj_det(q2, q3);
    Complex a = d12 * q3.a - x * d23 * q1.a;
    Complex b = d12 * q3.b - x * d23 * q1.b;
    if (a == Complex{0.0} && b == Complex{0.0})
        fail(ErrorKind::NumericalFailure, "degenerate cross-ratio solve");
    return ProjectivePoint{a, b}.normalized();
}

ProjectivePoint solve_cross_ratio_p2(const ProjectivePoint& z1, const ProjectivePoint& z3,
                                     const ProjectivePoint& z4, Complex x) {
    ProjectivePoint q1 = z1.normalized(), q3 = z3.normalized(), q4 = z4.normalized();
    Complex d34 = proj_det(q3, q4), d14 = proj_det(q1, q4);
    Complex a = q1.a * d34 + x * q3.a * d14;
    Complex b = q1.b * d34 + x * q3.b * d14;
    if (a == Complex{0.0} && b == Complex{0.0})
        fail(ErrorKind::NumericalFailure, "degenerate cross-ratio solve");
    return ProjectivePoint{a, b}.normalized();
}

} // namespace mono
