#pragma once

// Independent oracle for the recessive solution of y'' = z^2 y along the
// positive real axis: entire power-series solutions matched to the asymptotic
// expansion e^{-z^2/2} sum_k a_k z^{-1/2-2k} at a moderate radius. Nothing
// here touches the transport pipeline.

#include <array>
#include <cmath>
#include <stdexcept>

namespace weber_oracle {

struct Basis {
    double e, eprime, o, oprime; // even/odd solutions and derivatives
};

// Power series with c_{k+4} (k+4)(k+3) = c_k.
inline Basis series_basis(double z) {
    Basis b{0, 0, 0, 0};
    double ce = 1.0; // even: starts at z^0
    double co = 1.0; // odd: starts at z^1
    double ze = 1.0, zo = z;
    for (int k = 0; k < 400; ++k) {
        int pe = 4 * k, po = 4 * k + 1;
        b.e += ce * ze;
        b.eprime += pe > 0 ? ce * pe * ze / z : 0.0;
        b.o += co * zo;
        b.oprime += co * po * zo / z;
        double ce_next = ce / ((pe + 4.0) * (pe + 3.0));
        double co_next = co / ((po + 4.0) * (po + 3.0));
        double step = z * z * z * z;
        ze *= step;
        zo *= step;
        ce = ce_next;
        co = co_next;
        if (std::abs(ce * ze) < 1e-300 && std::abs(co * zo) < 1e-300) break;
    }
    return b;
}

struct Recessive {
    double y, yprime;
};

// Optimally truncated asymptotic series for the recessive solution.
inline Recessive asymptotic(double z) {
    double a = 1.0;
    double u = 0.0, du = 0.0; // u = sum a_k z^{-1/2-2k}
    double best = INFINITY;
    for (int k = 0; k < 200; ++k) {
        double p = -0.5 - 2.0 * k;
        double term = a * std::pow(z, p);
        if (std::abs(term) > best) break; // divergence point of the series
        best = std::abs(term);
        u += term;
        du += a * p * std::pow(z, p - 1.0);
        a = -a * (2.0 * k + 0.5) * (2.0 * k + 1.5) / (4.0 * (k + 1.0));
    }
    double g = std::exp(-z * z / 2.0);
    return {g * u, g * (du - z * u)};
}

// y'(0)/y(0) of the solution recessive as z -> +inf.
inline double ratio_at_zero(double match_radius) {
    Basis b = series_basis(match_radius);
    Recessive r = asymptotic(match_radius);
    double det = b.e * b.oprime - b.o * b.eprime;
    double alpha = (r.y * b.oprime - b.o * r.yprime) / det;
    double beta = (b.e * r.yprime - r.y * b.eprime) / det;
    return beta / alpha;
}

// Cross-validated value: two matching radii must agree, and both must agree
// with the closed form -2 Gamma(3/4)/Gamma(1/4).
inline double validated_ratio() {
    double r5 = ratio_at_zero(5.0);
    double r6 = ratio_at_zero(6.0);
    if (std::abs(r5 - r6) > 1e-9) throw std::runtime_error("weber oracle: radii disagree");
    double gamma_form = -2.0 * std::tgamma(0.75) / std::tgamma(0.25);
    if (std::abs(r6 - gamma_form) > 1e-8)
        throw std::runtime_error("weber oracle: gamma form disagrees");
    return r6;
}

} // namespace weber_oracle
