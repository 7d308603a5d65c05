#pragma once

#include <array>
#include <complex>
#include <optional>

#include "mono/errors.hpp"

namespace mono {

using Complex = std::complex<double>;

// Tolerances shared across the library. Projective equality is scale-free:
// two representatives are equal when |det| <= kProjEq * |p| * |q|.
inline constexpr double kProjEq = 1e-9;     // projective point equality
inline constexpr double kClassify = 1e-8;   // parabolic test on |tr^2/det - 4|
inline constexpr double kNum = 1e-9;        // generic relative comparisons

bool finite(Complex z);

// Point of P^1 in homogeneous coordinates (a : b); (0,0) is forbidden.
// Affine value is a/b, so infinity is (1 : 0).
struct ProjectivePoint {
    Complex a{0.0, 0.0};
    Complex b{1.0, 0.0};

    ProjectivePoint() = default;
    ProjectivePoint(Complex a_, Complex b_);

    static ProjectivePoint affine(Complex z) { return {z, Complex{1.0}}; }
    static ProjectivePoint infinity() { return {Complex{1.0}, Complex{0.0}}; }

    bool is_infinite(double tol = kProjEq) const;
    // Affine value; infinite points map to a huge-but-finite sentinel free result,
    // so call is_infinite first when it matters.
    Complex affine_value() const { return a / b; }

    double norm() const;

    // Largest-modulus component scaled to exactly 1. Idempotent bit-for-bit.
    ProjectivePoint normalized() const;
};

// det(p, q) = a_p b_q - a_q b_p; vanishes iff p == q on P^1.
Complex proj_det(const ProjectivePoint& p, const ProjectivePoint& q);
bool proj_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tol = kProjEq);

// Element of PGL_2(C) as a 2x2 matrix up to scale, det != 0.
struct ProjectiveMap {
    // Row-major: [[m00, m01], [m10, m11]].
    Complex m00{1.0}, m01{0.0}, m10{0.0}, m11{1.0};

    static ProjectiveMap identity() { return {}; }
    static ProjectiveMap from_rows(Complex a, Complex b, Complex c, Complex d);

    Complex det() const { return m00 * m11 - m01 * m10; }
    Complex trace() const { return m00 + m11; }
    double norm() const;

    ProjectiveMap inverse() const;    // adjugate; same projective class

    // det scaled to 1 and the overall sign fixed deterministically
    // (first entry of largest modulus gets Re > 0, ties by Im > 0).
    ProjectiveMap det_normalized() const;
};

ProjectiveMap operator*(const ProjectiveMap& l, const ProjectiveMap& r);
ProjectivePoint apply(const ProjectiveMap& m, const ProjectivePoint& p);

// Scale-free projective equality of maps: m and n agree in PGL_2 iff
// m * n^{-1} is scalar.
bool map_equal(const ProjectiveMap& m, const ProjectiveMap& n, double tol = 1e-7);

enum class MapClass { Identity, Parabolic, Semisimple };
const char* map_class_name(MapClass c);

// Identity iff scalar; Parabolic iff non-scalar with tr^2 = 4 det within tol;
// Semisimple otherwise. Pass tol = 0 for symbolically exact input.
MapClass classify(const ProjectiveMap& m, double tol = kClassify);

struct EigenLines {
    int count = 0;                          // 1 (parabolic) or 2 (semisimple)
    std::array<ProjectivePoint, 2> line{};
    // Eigenvalues of the det-1 representative, defined up to a global sign.
    std::array<Complex, 2> value{};
};

// Fixed points on P^1 with eigenvalues; throws IdentityMap for scalar input.
EigenLines fixed_lines(const ProjectiveMap& m, double tol = kClassify);

// Cross ratio computed from 2x2 determinants so points at infinity need no
// special casing. Degenerate configurations are in-band results.
struct CrossRatio {
    enum class Kind { Value, Zero, Infinite, Indeterminate };
    Kind kind = Kind::Indeterminate;
    Complex value{0.0};

    static CrossRatio of(Complex v) { return {Kind::Value, v}; }
    static CrossRatio zero() { return {Kind::Zero, {}}; }
    static CrossRatio infinite() { return {Kind::Infinite, {}}; }
    static CrossRatio indeterminate() { return {Kind::Indeterminate, {}}; }

    bool regular() const { return kind == Kind::Value && value != Complex{0.0}; }
    bool is(Kind k) const { return kind == k; }
};

CrossRatio operator*(const CrossRatio& x, const CrossRatio& y);
bool cross_ratio_close(const CrossRatio& x, const CrossRatio& y, double rel);

// (z1-z2)(z3-z4) / ((z2-z3)(z1-z4)) in determinant form.
CrossRatio cross_ratio(const ProjectivePoint& p1, const ProjectivePoint& p2,
                       const ProjectivePoint& p3, const ProjectivePoint& p4,
                       double tol = kProjEq);

// Unique g with g * src[i] = dst[i]; triples must be pairwise distinct.
ProjectiveMap map_from_triples(const std::array<ProjectivePoint, 3>& src,
                               const std::array<ProjectivePoint, 3>& dst);

// Solve cross_ratio(z1, z2, z3, z4) = x for the missing point. The solution
// is a linear expression in the homogeneous coordinates, hence always exists;
// degenerate data surfaces as a (0,0) result and throws.
ProjectivePoint solve_cross_ratio_p4(const ProjectivePoint& z1, const ProjectivePoint& z2,
                                     const ProjectivePoint& z3, Complex x);
ProjectivePoint solve_cross_ratio_p2(const ProjectivePoint& z1, const ProjectivePoint& z3,
                                     const ProjectivePoint& z4, Complex x);

} // namespace mono
