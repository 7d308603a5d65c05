#include "mono/potential.hpp"

#include <algorithm>
#include <cmath>

namespace mono {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<Complex> trimmed(std::vector<Complex> c) {
    while (!c.empty() && c.back() == Complex{0.0}) c.pop_back();
    return c;
}

double coeff_scale(const std::vector<Complex>& c) {
    double s = 0.0;
    for (const auto& x : c) s = std::max(s, std::abs(x));
    return s;
}

} // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : c(trimmed(std::move(coeffs))) {
    for (const auto& x : c)
        if (!finite(x)) fail(ErrorKind::InvalidInput, "non-finite polynomial coefficient");
}

Complex Polynomial::eval(Complex z) const {
    Complex acc{0.0};
    for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c.size() <= 1) return {};
    std::vector<Complex> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = (double)i * c[i];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::scaled(Complex s) const {
    std::vector<Complex> d = c;
    for (auto& x : d) x *= s;
    return Polynomial(std::move(d));
}

Polynomial Polynomial::compose_power(int k) const {
    if (zero()) return {};
    std::vector<Complex> d(1 + (size_t)degree() * k, Complex{0.0});
    for (size_t i = 0; i < c.size(); ++i) d[i * k] = c[i];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::times_power(int k) const {
    if (zero()) return {};
    std::vector<Complex> d(c.size() + k, Complex{0.0});
    for (size_t i = 0; i < c.size(); ++i) d[i + k] = c[i];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::deflate(Complex r) const {
    if (c.size() <= 1) return {};
    std::vector<Complex> q(c.size() - 1);
    Complex carry = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = c[i] + carry * r;
    }
    return Polynomial(std::move(q));
}

int Polynomial::trailing_zeros(double tol) const {
    double s = coeff_scale(c);
    int n = 0;
    while (n < (int)c.size() && std::abs(c[n]) <= tol * s) ++n;
    return n == (int)c.size() ? 0 : n;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.zero() || q.zero()) return {};
    std::vector<Complex> d(p.c.size() + q.c.size() - 1, Complex{0.0});
    for (size_t i = 0; i < p.c.size(); ++i)
        for (size_t j = 0; j < q.c.size(); ++j) d[i + j] += p.c[i] * q.c[j];
    return Polynomial(std::move(d));
}

std::vector<RootCluster> roots(const Polynomial& p) {
    std::vector<RootCluster> out;
    if (p.degree() <= 0) return out;
    Polynomial q = p;
    int zeros = q.trailing_zeros();
    if (zeros > 0) {
        out.push_back({Complex{0.0}, zeros});
        q = Polynomial(std::vector<Complex>(q.c.begin() + zeros, q.c.end()));
    }
    int n = q.degree();
    if (n == 0) return out;
    if (n == 1) {
        out.push_back({-q.c[0] / q.c[1], 1});
        return out;
    }
    // Durand-Kerner on the monic normalization.
    std::vector<Complex> m(q.c);
    for (auto& x : m) x /= q.lead();
    double radius = 1.0;
    for (int i = 0; i < n; ++i)
        radius = std::max(radius, 2.0 * std::pow(std::abs(m[i]), 1.0 / (n - i)));
    std::vector<Complex> z(n);
    Complex seed{0.4, 0.9};
    Complex w{1.0};
    for (int i = 0; i < n; ++i) {
        w *= seed;
        z[i] = radius * w / std::abs(w) * (0.5 + 0.5 * (i + 1.0) / n);
    }
    auto eval_monic = [&](Complex x) {
        Complex acc{1.0};
        for (int i = n - 1; i >= 0; --i) acc = acc * x + m[i];
        return acc;
    };
    for (int iter = 0; iter < 600; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex denom{1.0};
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            Complex step = eval_monic(z[i]) / denom;
            z[i] -= step;
            moved = std::max(moved, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (moved < 1e-14) break;
    }
    // Cluster nearby iterates; a multiplicity-m root scatters Durand-Kerner
    // output on a ring of radius ~eps^(1/m).
    std::vector<char> used(n, 0);
    for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        std::vector<int> cluster{i};
        used[i] = 1;
        for (int j = i + 1; j < n; ++j) {
            if (used[j]) continue;
            if (std::abs(z[i] - z[j]) <= 3e-4 * (1.0 + std::abs(z[i]))) {
                cluster.push_back(j);
                used[j] = 1;
            }
        }
        Complex center{0.0};
        for (int j : cluster) center += z[j];
        center /= (double)cluster.size();
        int mult = (int)cluster.size();
        // Refine through the (m-1)-st derivative, where the root is simple.
        Polynomial d = q;
        for (int k = 0; k < mult - 1; ++k) d = d.derivative();
        Polynomial dd = d.derivative();
        for (int it = 0; it < 60; ++it) {
            Complex f = d.eval(center), df = dd.eval(center);
            if (std::abs(df) == 0.0) break;
            Complex step = f / df;
            center -= step;
            if (std::abs(step) <= 1e-15 * (1.0 + std::abs(center))) break;
        }
        out.push_back({center, mult});
    }
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return out;
}

RationalPotential RationalPotential::make(Polynomial num, Polynomial den) {
    if (den.zero()) fail(ErrorKind::InvalidInput, "denominator is identically zero");
    // Cancel exact common powers of z, then any detected common roots.
    int tz = num.zero() ? 0 : std::min(num.trailing_zeros(), den.trailing_zeros());
    if (tz > 0) {
        num = Polynomial(std::vector<Complex>(num.c.begin() + tz, num.c.end()));
        den = Polynomial(std::vector<Complex>(den.c.begin() + tz, den.c.end()));
    }
    if (!num.zero() && den.degree() > 0) {
        for (const RootCluster& r : roots(den)) {
            double scale =
                coeff_scale(num.c) * std::max(1.0, std::pow(std::abs(r.location), num.degree()));
            for (int k = 0; k < r.multiplicity && num.degree() > 0; ++k) {
                if (std::abs(num.eval(r.location)) >= 1e-10 * scale) break;
                num = num.deflate(r.location);
                den = den.deflate(r.location);
            }
        }
    }
    return {std::move(num), std::move(den)};
}

Complex RationalPotential::derivative(Complex z) const {
    Complex d = den.eval(z);
    return (num.derivative().eval(z) * d - num.eval(z) * den.derivative().eval(z)) / (d * d);
}

double PoleRecord::ray_angle_z(int k) const {
    double theta = stokes_angles[k % stokes_angles.size()];
    if (!at_infinity) return theta;
    double a = std::fmod(-theta, kTwoPi);
    return a < 0 ? a + kTwoPi : a;
}

namespace {

// Directions where a0 z^{2-m} e^{-i offset} is real positive.
std::vector<double> ray_angles(Complex a0, int m, double offset) {
    int count = m - 2;
    std::vector<double> out;
    for (int k = 0; k < count; ++k) {
        double th = (std::arg(a0) - offset + kTwoPi * k) / count;
        th = std::fmod(th, kTwoPi);
        if (th < 0) th += kTwoPi;
        out.push_back(th);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void fill_regular(PoleRecord& r) {
    Complex a = r.leading;
    r.exponent = Complex{0.0, kTwoPi} * std::sqrt(1.0 + 4.0 * a);
    r.residue = Complex{0.0, 2.0 * kTwoPi} * std::sqrt(a);
}

} // namespace

std::vector<PoleRecord> analyze(const RationalPotential& phi) {
    if (phi.zero()) fail(ErrorKind::NoPoles, "the zero potential has no poles");
    std::vector<PoleRecord> out;
    for (const RootCluster& r : roots(phi.den)) {
        PoleRecord rec;
        rec.location = r.location;
        rec.order = r.multiplicity;
        Polynomial q = phi.den;
        for (int k = 0; k < r.multiplicity; ++k) q = q.deflate(r.location);
        rec.leading = phi.num.eval(r.location) / q.eval(r.location);
        if (rec.order == 1) {
            // Simple pole: leading coefficient and residue are defined as 0.
            rec.leading = Complex{0.0};
            fill_regular(rec);
        } else if (rec.order == 2) {
            fill_regular(rec);
        } else {
            rec.stokes_angles = ray_angles(rec.leading, rec.order, 0.0);
            rec.anti_stokes_angles = ray_angles(rec.leading, rec.order, M_PI);
        }
        out.push_back(rec);
    }
    // Infinity: the chart law gives phi(1/w)/w^4 in the w chart.
    int m_inf = phi.num.degree() - phi.den.degree() + 4;
    if (m_inf >= 1) {
        PoleRecord rec;
        rec.at_infinity = true;
        rec.order = m_inf;
        Complex c = phi.num.lead() / phi.den.lead();
        if (m_inf == 1) {
            rec.leading = Complex{0.0};
            fill_regular(rec);
        } else if (m_inf == 2) {
            rec.leading = c;
            fill_regular(rec);
        } else {
            rec.leading = c;
            rec.stokes_angles = ray_angles(c, m_inf, 0.0);
            rec.anti_stokes_angles = ray_angles(c, m_inf, M_PI);
        }
        out.push_back(rec);
    }
    if (out.empty()) fail(ErrorKind::NoPoles, "potential has no poles on the projective line");
    return out;
}

SurfaceOfResult surface_of(const std::vector<PoleRecord>& poles) {
    SurfaceOfResult res;
    res.surface.genus = 0;
    for (int i = 0; i < (int)poles.size(); ++i) {
        if (poles[i].regular()) {
            res.surface.punctures += 1;
        } else {
            res.surface.boundary.push_back(poles[i].order - 2);
            res.boundary_pole.push_back(i);
        }
    }
    res.degenerate = res.surface.degenerate();
    return res;
}

RationalPotential pullback_power(const RationalPotential& phi, int k) {
    if (k <= 0) fail(ErrorKind::InvalidInput, "pullback power must be positive");
    if (k == 1) return phi;
    Polynomial num = phi.num.compose_power(k).scaled(Complex{(double)(k * k)}).times_power(2 * k - 2);
    Polynomial den = phi.den.compose_power(k);
    return RationalPotential::make(std::move(num), std::move(den));
}

} // namespace mono
