#pragma once

// Gauss-Legendre quadrature for contour-free period integrals, independent of
// the transport pipeline.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace quadrature {

struct Rule {
    std::vector<double> node, weight;
};

inline Rule gauss_legendre(int n) {
    Rule r;
    r.node.resize(n);
    r.weight.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.node[i] = x;
        r.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

inline std::complex<double> integrate(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, int n) {
    Rule r = gauss_legendre(n);
    std::complex<double> acc{0.0};
    for (int i = 0; i < n; ++i) {
        double x = 0.5 * (a + b) + 0.5 * (b - a) * r.node[i];
        acc += r.weight[i] * f(x);
    }
    return 0.5 * (b - a) * acc;
}

// 2 int_{-1}^{1} sqrt(z^2-1) dz with the principal branch; equals i pi. The
// substitution z = sin t removes the endpoint square-root singularities so
// Gauss-Legendre converges spectrally. Verified against a refined rule and
// the closed form before use.
inline std::complex<double> weber_like_period() {
    auto f = [](double t) {
        double z = std::sin(t);
        return std::sqrt(std::complex<double>(z * z - 1.0, 0.0)) * std::cos(t);
    };
    std::complex<double> p64 = 2.0 * integrate(f, -M_PI / 2.0, M_PI / 2.0, 64);
    std::complex<double> p128 = 2.0 * integrate(f, -M_PI / 2.0, M_PI / 2.0, 128);
    if (std::abs(p64 - p128) > 1e-10) throw std::runtime_error("period quadrature not converged");
    std::complex<double> closed{0.0, M_PI};
    if (std::abs(p128 - closed) > 1e-10)
        throw std::runtime_error("period quadrature disagrees with the closed form");
    return p128;
}

} // namespace quadrature
