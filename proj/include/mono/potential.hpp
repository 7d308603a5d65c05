#pragma once

#include <vector>

#include "mono/projective.hpp"
#include "mono/surface.hpp"

namespace mono {

// Dense polynomial over C, coefficients in ascending degree.
struct Polynomial {
    std::vector<Complex> c;

    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);

    int degree() const { return (int)c.size() - 1; } // -1 for the zero polynomial
    bool zero() const { return c.empty(); }
    Complex lead() const { return c.back(); }
    Complex eval(Complex z) const;
    Polynomial derivative() const;
    Polynomial scaled(Complex s) const;
    // Substitute z -> w^k.
    Polynomial compose_power(int k) const;
    Polynomial times_power(int k) const; // multiply by z^k
    // Synthetic division by (z - r); remainder discarded.
    Polynomial deflate(Complex r) const;
    int trailing_zeros(double tol = 0.0) const;
};

Polynomial operator*(const Polynomial& p, const Polynomial& q);

// All roots with multiplicity via Durand-Kerner iteration plus cluster
// detection (clusters are refined through the (m-1)-st derivative). Exact
// zero roots are deflated first.
struct RootCluster {
    Complex location;
    int multiplicity;
};
std::vector<RootCluster> roots(const Polynomial& p);

// phi(z) dz^2 as a reduced rational function.
struct RationalPotential {
    Polynomial num, den;

    static RationalPotential make(Polynomial num, Polynomial den);
    Complex eval(Complex z) const { return num.eval(z) / den.eval(z); }
    // (N'D - ND')/D^2
    Complex derivative(Complex z) const;
    bool is_polynomial() const { return den.degree() == 0; }
    bool zero() const { return num.zero(); }
    // Scale by a complex constant (num scaled).
    RationalPotential scaled(Complex s) const { return {num.scaled(s), den}; }
};

struct PoleRecord {
    bool at_infinity = false;
    Complex location{0.0};       // meaningless when at_infinity
    int order = 0;
    Complex leading{0.0};        // a_0 in the local chart; a(p) for order <= 2
    // Order <= 2 only (principal branches, sign-free representatives):
    Complex exponent{0.0};       // 2 pi i sqrt(1 + 4 a(p))
    Complex residue{0.0};        // 4 pi i sqrt(a(p))
    // Order > 2 only: local-chart ray angles in [0, 2pi), sorted ascending.
    std::vector<double> stokes_angles;       // asymptotic horizontal directions
    std::vector<double> anti_stokes_angles;  // asymptotic vertical directions

    bool regular() const { return order <= 2; }
    // Direction of the k-th Stokes ray in the z-plane (the local chart at a
    // finite pole, the 1/w chart at infinity).
    double ray_angle_z(int k) const;
};

// One record per pole including infinity. Throws NoPoles for the zero
// potential only.
std::vector<PoleRecord> analyze(const RationalPotential& phi);

struct SurfaceOfResult {
    MarkedBorderedSurface surface;
    bool degenerate = false; // genus 0 with fewer than 3 marked points
    // boundary[i] belongs to irregular_poles[i] of analyze()'s output order.
    std::vector<int> boundary_pole; // indices into the pole table
};

SurfaceOfResult surface_of(const std::vector<PoleRecord>& poles);

// Quadratic-differential pullback under z = w^k: k^2 w^{2k-2} phi(w^k).
RationalPotential pullback_power(const RationalPotential& phi, int k);

} // namespace mono
