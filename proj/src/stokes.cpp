#include "mono/stokes.hpp"

#include <algorithm>
#include <cmath>

namespace mono {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double dist_to_other_poles(const std::vector<PoleRecord>& poles, int index) {
    double best = INFINITY;
    if (poles[index].at_infinity) return best;
    for (int j = 0; j < (int)poles.size(); ++j) {
        if (j == index || poles[j].at_infinity) continue;
        best = std::min(best, std::abs(poles[j].location - poles[index].location));
    }
    return best;
}

double max_finite_pole_modulus(const std::vector<PoleRecord>& poles) {
    double m = 0.0;
    for (const auto& p : poles)
        if (!p.at_infinity) m = std::max(m, std::abs(p.location));
    return m;
}

// Continuously tracked sqrt(phi) along a ray march.
struct BranchTracker {
    Complex prev;
    bool started = false;
    Complex eval(const RationalPotential& phi, Complex z) {
        Complex s = std::sqrt(phi.eval(z));
        if (started && std::abs(s + prev) < std::abs(s - prev)) s = -s;
        prev = s;
        started = true;
        return s;
    }
};

struct SeedPoint {
    Complex z;
    Complex sqrt_phi; // sigma-adjusted branch at the seed
    double decay;
};

// Marches along the sector's central ray toward the pole until the decay
// integral Re int sigma sqrt(phi) dz reaches the target.
SeedPoint place_seed(const RationalPotential& phi, const std::vector<PoleRecord>& poles,
                     int pole_index, int sector, const IntegratorConfig& cfg) {
    const PoleRecord& pole = poles[pole_index];
    if (pole.order <= 2)
        fail(ErrorKind::InvalidInput, "subdominant solutions require an irregular pole");
    bool inf = pole.at_infinity;
    double theta = inf ? pole.ray_angle_z(sector) : pole.stokes_angles[sector];
    Complex dir{std::cos(theta), std::sin(theta)};
    Complex origin = inf ? Complex{0.0} : pole.location;

    double r0;
    if (inf) {
        r0 = 2.0 * (1.0 + max_finite_pole_modulus(poles));
    } else {
        double d = dist_to_other_poles(poles, pole_index);
        r0 = std::isfinite(d) ? 0.45 * d : 1.0;
        r0 = std::min(r0, cfg.seed_radius_max);
    }
    double factor = inf ? 1.02 : 1.0 / 1.02;
    double limit = inf ? cfg.seed_radius_max : 1e-12 * r0;

    // Signed integral of Re(sqrt(phi) dz) marching toward the pole; its
    // asymptotic sign fixes the decaying branch. Subleading terms may flip
    // the integrand near the start, so the sign is read off at the end.
    BranchTracker branch;
    double r = r0;
    Complex z = origin + r * dir;
    Complex s = branch.eval(phi, z);
    double raw = 0.0;
    long guard = 0;
    while (std::abs(raw) < cfg.wkb_decay_target) {
        if (++guard > 200000 || (inf ? r * factor > limit : r * factor < limit))
            fail(ErrorKind::SeedNotFound,
                 "decay target unreachable within the seed radius bound");
        double rn = r * factor;
        Complex zn = origin + rn * dir;
        Complex sn = branch.eval(phi, zn);
        raw += 0.5 * ((s * dir).real() + (sn * dir).real()) * (rn - r);
        r = rn;
        z = zn;
        s = sn;
    }
    double sigma = raw > 0.0 ? 1.0 : -1.0;
    return {z, sigma * s, std::abs(raw)};
}

} // namespace

Complex sector_anchor(const PoleRecord& pole, int sector, double radius) {
    double theta = pole.at_infinity ? pole.ray_angle_z(sector) : pole.stokes_angles[sector];
    Complex dir{std::cos(theta), std::sin(theta)};
    return (pole.at_infinity ? Complex{0.0} : pole.location) + radius * dir;
}

SubdominantLine subdominant(const RationalPotential& phi, const std::vector<PoleRecord>& poles,
                            int pole_index, int sector, Complex base_point,
                            const IntegratorConfig& cfg) {
    SeedPoint seed = place_seed(phi, poles, pole_index, sector, cfg);
    // Exact derivative of the WKB ansatz phi^{-1/4} exp(-int sqrt(phi)):
    // y'/y = -sqrt(phi) - phi'/(4 phi).
    Complex yp = -seed.sqrt_phi - phi.derivative(seed.z) / (4.0 * phi.eval(seed.z));
    VectorTransport t =
        integrate_vector(phi, PlanarPath::line(seed.z, base_point), {Complex{1.0}, -yp}, cfg);
    return {t.line(), base_point, seed.z, seed.decay};
}

RegularFrame frame_regular(const RationalPotential& phi, const std::vector<PoleRecord>& poles,
                           int pole_index, int sign, const IntegratorConfig& cfg) {
    const PoleRecord& pole = poles[pole_index];
    if (!pole.regular()) fail(ErrorKind::InvalidInput, "frame_regular requires a pole of order <= 2");
    PlanarPath loop;
    Complex base;
    if (pole.at_infinity) {
        // Counterclockwise around w = 0 is clockwise in the z chart.
        double R = 2.0 * (1.0 + max_finite_pole_modulus(poles));
        loop.segments.push_back(PathSegment::arc({0.0}, R, 0.0, -kTwoPi));
        base = Complex{R};
    } else {
        double d = dist_to_other_poles(poles, pole_index);
        double r = std::isfinite(d) ? 0.5 * d : 1.0;
        loop = PlanarPath::circle(pole.location, r);
        base = pole.location + r;
    }
    ProjectiveMap m = monodromy(phi, loop, cfg);
    MapClass cls = classify(m);
    if (cls != MapClass::Semisimple)
        fail(ErrorKind::ResonantOrApparent,
             std::string("monodromy around the regular pole is ") + map_class_name(cls));
    EigenLines lines = fixed_lines(m);
    Complex target = std::exp((double)sign * pole.exponent);
    Complex ratio01 = lines.value[0] / lines.value[1];
    const double tol = 1e-4;
    bool hit0 = std::abs(ratio01 - target) <= tol * std::abs(target);
    bool hit1 = std::abs(1.0 / ratio01 - target) <= tol * std::abs(target);
    if (hit0 && hit1)
        fail(ErrorKind::AmbiguousMatch, "both eigenvalues match the exponent target");
    if (!hit0 && !hit1)
        fail(ErrorKind::NumericalFailure,
             "no eigenvalue ratio matches exp(sign r); analysis and transport disagree");
    int pick = hit0 ? 0 : 1;
    return {lines.line[pick], base, m, pick == 0 ? ratio01 : 1.0 / ratio01};
}

namespace {

// Fan of subdominant lines at base 0 for a polynomial potential.
BuildResult build_auto(const RationalPotential& phi, const IntegratorConfig& cfg, ExecMode exec) {
    std::vector<PoleRecord> poles = analyze(phi);
    SurfaceOfResult so = surface_of(poles);
    if (so.degenerate)
        fail(ErrorKind::DegenerateSurface,
             "genus-0 surface with fewer than 3 marked points: " + so.surface.signature());
    const PoleRecord& pole = poles.back(); // the single pole at infinity
    int k = pole.order - 2;
    // Boundary labels run counterclockwise, i.e. by ascending ray angle in the
    // z plane, starting from the smallest non-negative angle.
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return pole.ray_angle_z(a) < pole.ray_angle_z(b); });

    std::vector<ProjectivePoint> lines(k);
    parallel_for(
        k,
        [&](int i) {
            lines[i] = subdominant(phi, poles, (int)poles.size() - 1, order[i], {0.0}, cfg).line;
        },
        exec);

    BuildResult res;
    res.poles = poles;
    res.surface = so.surface;
    res.tri = default_triangulation(so.surface);
    res.signing = Signing::trivial(res.tri);
    res.sector_of_vertex.assign(k, -1);
    for (int i = 0; i < k; ++i) res.sector_of_vertex[i] = order[i];
    DevelopedSystem F;
    F.base = res.tri;
    F.gluing.assign(res.tri.edges.size(), std::nullopt);
    for (EdgeId e : res.tri.arcs()) F.gluing[e] = ProjectiveMap::identity();
    for (const auto& t : res.tri.triangles)
        F.corners.push_back({lines[t.corner[0]], lines[t.corner[1]], lines[t.corner[2]]});
    res.system = std::move(F);
    return res;
}

BuildResult build_planar(const RationalPotential& phi, const Signing* signing,
                         const PlanarRealization& real, const IntegratorConfig& cfg,
                         ExecMode exec) {
    std::vector<PoleRecord> poles = analyze(phi);
    SurfaceOfResult so = surface_of(poles);
    if (so.degenerate)
        fail(ErrorKind::DegenerateSurface,
             "genus-0 surface with fewer than 3 marked points: " + so.surface.signature());
    ValidationReport rep = real.tri.validate();
    if (!rep.ok()) fail(ErrorKind::InvalidInput, "realization triangulation invalid: " + rep.joined());
    if (real.tri.surface.rank() != so.surface.rank() ||
        real.tri.surface.punctures != so.surface.punctures)
        fail(ErrorKind::InvalidInput, "realization does not match the surface of the potential");
    if (real.anchors.size() != real.tri.vertices.size() ||
        real.tri_base.size() != real.tri.triangles.size())
        fail(ErrorKind::InvalidInput, "realization tables incomplete");
    for (EdgeId e : real.tri.arcs())
        if (!real.arc_paths.count(e))
            fail(ErrorKind::InvalidInput, "arc " + std::to_string(e) + " has no planar realization");

    Signing sig = signing ? *signing : Signing::trivial(real.tri);
    if ((int)sig.sign.size() != (int)real.tri.vertices.size())
        fail(ErrorKind::InvalidInput, "signing size does not match the vertex table");

    // Framing line of each vertex at its anchor point.
    int nv = (int)real.tri.vertices.size();
    std::vector<ProjectivePoint> at_anchor(nv);
    std::vector<Complex> anchor_pos(nv);
    parallel_for(
        nv,
        [&](int v) {
            const PlanarRealization::Anchor& a = real.anchors[v];
            const PoleRecord& pole = poles.at(a.pole);
            if (real.tri.vertices[v].puncture) {
                RegularFrame fr = frame_regular(phi, poles, a.pole, sig.at(v), cfg);
                anchor_pos[v] = fr.base;
                at_anchor[v] = fr.line;
            } else {
                double radius = a.radius;
                if (radius <= 0.0)
                    fail(ErrorKind::InvalidInput, "boundary anchor needs a positive radius");
                Complex anchor = sector_anchor(pole, a.sector, radius);
                anchor_pos[v] = anchor;
                at_anchor[v] = subdominant(phi, poles, a.pole, a.sector, anchor, cfg).line;
            }
        },
        exec);

    BuildResult res;
    res.poles = poles;
    res.surface = real.tri.surface;
    res.tri = real.tri;
    res.signing = sig;
    res.sector_of_vertex.assign(nv, -1);
    for (int v = 0; v < nv; ++v)
        if (!real.tri.vertices[v].puncture) res.sector_of_vertex[v] = real.anchors[v].sector;

    DevelopedSystem F;
    F.base = real.tri;
    F.gluing.assign(real.tri.edges.size(), std::nullopt);
    F.corners.assign(real.tri.triangles.size(),
                     {ProjectivePoint::infinity(), ProjectivePoint::infinity(),
                      ProjectivePoint::infinity()});

    // Corner lines: transport each anchor value into the triangle's base
    // point chart. Boundary anchors sit on their Stokes rays and go straight;
    // puncture anchors first walk the short way around the pole circle to the
    // angle facing the base point, then leave radially.
    for (TriId t = 0; t < (TriId)real.tri.triangles.size(); ++t) {
        for (int c = 0; c < 3; ++c) {
            VertexId v = real.tri.triangles[t].corner[c];
            ProjectivePoint p = at_anchor[v].normalized();
            PlanarPath path;
            if (real.tri.vertices[v].puncture) {
                Complex pole = poles.at(real.anchors[v].pole).location;
                double r = std::abs(anchor_pos[v] - pole);
                double from = std::arg(anchor_pos[v] - pole);
                double delta = std::remainder(std::arg(real.tri_base[t] - pole) - from, kTwoPi);
                if (std::abs(delta) > 1e-12)
                    path.segments.push_back(PathSegment::arc(pole, r, from, from + delta));
                else
                    path.segments.push_back(PathSegment::line(anchor_pos[v], anchor_pos[v]));
                path.then_line_to(real.tri_base[t]);
            } else {
                path = PlanarPath::line(anchor_pos[v], real.tri_base[t]);
            }
            VectorTransport tr = integrate_vector(phi, path, {p.a, p.b}, cfg);
            F.corners[t][c] = tr.line();
        }
    }
    // Gluings: transport across the midpoint of each arc realization.
    for (EdgeId e : real.tri.arcs()) {
        const PlanarPath& ap = real.arc_paths.at(e);
        Complex mid = ap.segments[ap.segments.size() / 2].at(0.5);
        auto [tA, sA] = real.tri.edges[e].inc[0];
        auto [tB, sB] = real.tri.edges[e].inc[1];
        (void)sA;
        (void)sB;
        PlanarPath cross = PlanarPath::line(real.tri_base[tA], mid);
        cross.then_line_to(real.tri_base[tB]);
        TransportResult tr = integrate(
            phi, cross, {Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}}, cfg);
        F.gluing[e] = tr.map();
    }
    ValidationReport frep = F.validate();
    if (!frep.ok())
        fail(ErrorKind::InvalidInput,
             "realization develops inconsistently (check base points and anchors): " + frep.joined());
    res.system = std::move(F);
    return res;
}

} // namespace

BuildResult build_framed(const RationalPotential& phi, const Signing* signing,
                         const PlanarRealization* realization, const IntegratorConfig& cfg,
                         ExecMode exec) {
    cfg.validate();
    if (phi.zero()) fail(ErrorKind::NoPoles, "zero potential");
    if (!realization) {
        if (!phi.is_polynomial())
            fail(ErrorKind::RealizationRequired,
                 "non-polynomial potentials need a planar realization");
        return build_auto(phi, cfg, exec);
    }
    return build_planar(phi, signing, *realization, cfg, exec);
}

std::vector<SweepRow> wkb_sweep(const RationalPotential& phi, const std::vector<double>& hbars,
                                const IntegratorConfig& cfg, ExecMode exec) {
    std::vector<SweepRow> rows(hbars.size());
    parallel_for(
        (int)hbars.size(),
        [&](int i) {
            double h = hbars[i];
            if (!(h > 0)) fail(ErrorKind::InvalidInput, "hbar values must be positive");
            RationalPotential scaled = phi.scaled(Complex{1.0 / (h * h)});
            BuildResult b = build_framed(scaled, nullptr, nullptr, cfg, ExecMode::Serial);
            SweepRow row;
            row.hbar = h;
            row.coords = coordinates(b.system, b.tri);
            for (const auto& [e, v] : row.coords.values) {
                if (v.kind != CrossRatio::Kind::Value) continue;
                Complex lx = std::log(v.value);
                row.log_x[e] = lx;
                row.hbar_log_x[e] = h * lx;
            }
            rows[i] = std::move(row);
        },
        exec);
    return rows;
}

} // namespace mono
