#include "mono/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mono/stokes.hpp"

namespace mono::selftest {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return (double)(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int pick(int n) { return (int)(next() % (uint64_t)n); }
    Complex log_uniform(double lo, double hi) {
        double m = std::exp(uniform(std::log(lo), std::log(hi)));
        double t = uniform(0.0, kTwoPi);
        return {m * std::cos(t), m * std::sin(t)};
    }
    Complex unit_disc() {
        double r = std::sqrt(uniform());
        double t = uniform(0.0, kTwoPi);
        return {r * std::cos(t), r * std::sin(t)};
    }
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double rel(Complex a, Complex b) {
    return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

double tuple_rel(const CoordinateTuple& X, const CoordinateTuple& Y) {
    double worst = 0.0;
    for (const auto& [e, v] : X.values) {
        CrossRatio w = Y.at(e);
        if (v.kind != w.kind) return INFINITY;
        if (v.kind == CrossRatio::Kind::Value) worst = std::max(worst, rel(v.value, w.value));
    }
    return worst;
}

std::vector<EdgeId> flippable(const IdealTriangulation& T) {
    std::vector<EdgeId> out;
    for (EdgeId e : T.arcs())
        if (!T.is_self_folded_interior(e)) out.push_back(e);
    return out;
}

// Smallest projective separation among the quadrilateral points feeding any
// coordinate. Observed roundtrip error grows like 1e-13 / separation (reading
// plus construction conditioning), so samples below 3e-4 cannot support the
// 1e-9 tolerance in doubles and are rejected as ill-conditioned.
double min_quad_separation(const DevelopedSystem& F) {
    double best = INFINITY;
    for (EdgeId e : F.base.arcs()) {
        auto [tA, sA] = F.base.edges[e].inc[0];
        auto [tB, sB] = F.base.edges[e].inc[1];
        std::array<ProjectivePoint, 4> q{
            F.corners[tA][sA].normalized(),
            apply(F.transition(e, 1), F.corners[tB][(sB + 2) % 3]).normalized(),
            F.corners[tA][(sA + 1) % 3].normalized(),
            F.corners[tA][(sA + 2) % 3].normalized()};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                best = std::min(best, std::abs(proj_det(q[i], q[j])) / (q[i].norm() * q[j].norm()));
    }
    return best;
}

RationalPotential rat(std::vector<Complex> num, std::vector<Complex> den) {
    return RationalPotential::make(Polynomial(std::move(num)), Polynomial(std::move(den)));
}

// Identity-gluing system on a surface whose reconstruct charts are global:
// one framing line per vertex.
DevelopedSystem vertex_line_system(const IdealTriangulation& T,
                                   const std::vector<ProjectivePoint>& lines) {
    DevelopedSystem F;
    F.base = T;
    F.gluing.assign(T.edges.size(), std::nullopt);
    for (EdgeId e : T.arcs()) F.gluing[e] = ProjectiveMap::identity();
    for (const auto& t : T.triangles)
        F.corners.push_back({lines[t.corner[0]], lines[t.corner[1]], lines[t.corner[2]]});
    return F;
}

// Once-punctured torus with prescribed gluings all fixing `line`.
DevelopedSystem torus_fixed_line_system(const ProjectiveMap& ga, const ProjectiveMap& gb,
                                        const ProjectiveMap& gc, const ProjectivePoint& line) {
    DevelopedSystem F;
    F.base = default_triangulation({1, {}, 1});
    F.gluing = {ga, gb, gc};
    F.corners.assign(2, {line, line, line});
    return F;
}

ProjectivePoint aff(Complex z) { return ProjectivePoint::affine(z); }
ProjectivePoint inf() { return ProjectivePoint::infinity(); }

// Annulus (1,1) carrying a core holonomy that swaps 0 and infinity; corner
// slots propagated so the presentation is consistent.
DevelopedSystem annulus_swap_system(Complex off_diag) {
    IdealTriangulation T = default_triangulation({0, {1, 1}, 0});
    // Arcs 0 (the cut) and 1 (the fan arc); triangles (O,O,I) and (O,I,I).
    ProjectiveMap S = ProjectiveMap::from_rows({0.0}, off_diag, {1.0}, {0.0});
    DevelopedSystem F;
    F.base = T;
    F.gluing.assign(T.edges.size(), std::nullopt);
    F.gluing[1] = ProjectiveMap::identity();
    F.gluing[0] = S;
    // Propagation with t0 = (x, y, z): S y = x, S z = w, t1 = (x, z, w).
    ProjectivePoint y = aff({0.0}), z = aff({0.0});
    ProjectivePoint x = apply(S, y).normalized(), w = apply(S, z).normalized();
    // Match slot layout of the catalog construction.
    auto [tA, sA] = T.edges[1].inc[0];
    (void)sA;
    F.corners.assign(2, {x, y, z});
    F.corners[tA] = {x, y, z};
    F.corners[1 - tA] = {x, z, w};
    return F;
}

// Pipeline artifact used by the determinism criterion: the full monodromy
// output for z^3 - 1 serialized to a canonical JSON string.
std::string pipeline_bytes() {
    IntegratorConfig cfg;
    BuildResult b = build_framed(rat({{-1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}}),
                                 nullptr, nullptr, cfg);
    GoodSearchResult g = find_good(b.system, b.tri);
    Json out{{"poles", poles_to_json(b.poles)},
             {"surface", to_json(b.surface)},
             {"system", to_json(b.system)},
             {"coordinates", to_json(g.coords)},
             {"degeneracy", to_json(degeneracy(b.system))}};
    return out.dump();
}

} // namespace

std::vector<MarkedBorderedSurface> catalog_surfaces() {
    std::vector<MarkedBorderedSurface> out;
    for (int k = 3; k <= 8; ++k) out.push_back({0, {k}, 0});
    for (int k = 1; k <= 5; ++k) out.push_back({0, {k}, 1});
    out.push_back({0, {1, 1}, 0});
    out.push_back({0, {2, 1}, 0});
    out.push_back({1, {}, 1});
    out.push_back({0, {}, 4});
    return out;
}

CoordinateTuple random_regular_tuple(const IdealTriangulation& T, uint64_t seed, double lo,
                                     double hi) {
    Rng rng(seed);
    CoordinateTuple X;
    for (EdgeId a : T.arcs()) X.values[a] = CrossRatio::of(rng.log_uniform(lo, hi));
    return X;
}

CriterionResult rank_law(bool quick) {
    CriterionResult res{1, "rank law under random flips"};
    int steps = quick ? 60 : 1000;
    Rng rng(1001);
    int surfaces = 0;
    for (const auto& s : catalog_surfaces()) {
        IdealTriangulation T0 = default_triangulation(s);
        int n = s.rank();
        if (T0.arc_count() != n) {
            res.detail = "seed triangulation of " + s.signature() + " has wrong arc count";
            return res;
        }
        TaggedTriangulation tau{T0, Signing::trivial(T0)};
        for (int i = 0; i < steps && n > 0; ++i) {
            EdgeId a = tau.tri.arcs()[rng.pick(n)];
            tau = tagged_flip(tau, a);
            if (tau.tri.arc_count() != n || !tau.tri.validate().ok()) {
                res.detail = "arc count drifted on " + s.signature();
                return res;
            }
        }
        ++surfaces;
    }
    res.pass = true;
    res.detail = std::to_string(surfaces) + " surfaces x " + std::to_string(steps) + " flips";
    return res;
}

CriterionResult cluster_identities(bool quick) {
    CriterionResult res{2, "cluster identities (roundtrip, mutation, pentagon)"};
    Rng rng(1002);
    int samples = quick ? 10 : 100;
    int walk_len = quick ? 10 : 50;
    double worst_round = 0.0, worst_wide = 0.0, worst_mut = 0.0;

    for (const auto& s : catalog_surfaces()) {
        IdealTriangulation T = default_triangulation(s);
        if (T.arc_count() == 0) continue;
        int accepted = 0;
        int guard = 0;
        while (accepted < samples && ++guard < 50 * samples) {
            CoordinateTuple W = random_regular_tuple(T, rng.next(), 0.5, 2.0);
            worst_round = std::max(worst_round, tuple_rel(coordinates(reconstruct(T, W), T), W));
            CoordinateTuple X = random_regular_tuple(T, rng.next(), 1e-3, 1e3);
            DevelopedSystem F;
            try {
                F = reconstruct(T, X);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NumericalFailure) throw;
                continue; // collided beyond double precision; resample
            }
            if (min_quad_separation(F) < 3e-4) continue; // ill-conditioned sample
            worst_wide = std::max(worst_wide, tuple_rel(coordinates(F, T), X));
            ++accepted;
        }
        if (accepted < samples) {
            res.detail = "could not draw enough well-posed samples on " + s.signature();
            return res;
        }
    }
    if (worst_round > 1e-12 || worst_wide > 1e-9) {
        res.detail = "roundtrip deviation " + fmt("%.3g", worst_round) + " / " + fmt("%.3g", worst_wide);
        return res;
    }

    // Mutation vs direct recomputation along random flip walks. Comparisons
    // are made only at well-conditioned states; MutationPole hits and states
    // whose developed points collide below the double-precision floor advance
    // the walk without being asserted on.
    for (const auto& s : catalog_surfaces()) {
        IdealTriangulation T = default_triangulation(s);
        if (flippable(T).empty()) continue;
        CoordinateTuple X = random_regular_tuple(T, rng.next(), 0.2, 5.0);
        auto in_window = [](const CoordinateTuple& Y) {
            for (const auto& [e, v] : Y.values)
                if (!v.regular() || std::abs(v.value) > 1e6 || std::abs(v.value) < 1e-6)
                    return false;
            return true;
        };
        for (int step = 0; step < walk_len; ++step) {
            DevelopedSystem F;
            try {
                F = reconstruct(T, X);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NumericalFailure) throw;
                X = random_regular_tuple(T, rng.next(), 0.2, 5.0);
                continue;
            }
            std::vector<EdgeId> fl = flippable(T);
            EdgeId k = fl[rng.pick((int)fl.size())];
            CoordinateTuple Xm;
            try {
                Xm = mutate(X, exchange_matrix(T), k);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::MutationPole) throw;
                X = random_regular_tuple(T, rng.next(), 0.2, 5.0);
                continue;
            }
            DevelopedSystem F2 = flip_framed(F, k);
            bool conditioned = min_quad_separation(F) >= 3e-4 &&
                               min_quad_separation(F2) >= 3e-4 && in_window(X) && in_window(Xm);
            if (conditioned) worst_mut = std::max(worst_mut, flip_consistency(F, T, k));
            T = flip(T, k);
            X = in_window(Xm) ? Xm : random_regular_tuple(T, rng.next(), 0.2, 5.0);
        }
    }
    if (worst_mut > 1e-10) {
        res.detail = "mutation deviation " + fmt("%.3g", worst_mut);
        return res;
    }

    // Pentagon: five alternating mutations transpose the two arcs, matching
    // the arc transposition of the five-flip sequence.
    IdealTriangulation disc5 = default_triangulation({0, {5}, 0});
    EdgeId a = disc5.arcs()[0], b = disc5.arcs()[1];
    CoordinateTuple P;
    P.values[a] = CrossRatio::of({2.0, 0.0});
    P.values[b] = CrossRatio::of({1.0 / 3.0, 0.0});
    CoordinateTuple cur = P;
    ExchangeMatrix m = exchange_matrix(disc5);
    for (int i = 0; i < 5; ++i) {
        EdgeId k = (i % 2 == 0) ? a : b;
        cur = mutate(cur, m, k);
        m = mutate(m, k);
    }
    double pent = std::max(rel(cur.at(a).value, P.at(b).value), rel(cur.at(b).value, P.at(a).value));
    if (pent > 1e-12) {
        res.detail = "pentagon deviation " + fmt("%.3g", pent);
        return res;
    }
    res.pass = true;
    res.detail = "roundtrip " + fmt("%.2g", worst_round) + "/" + fmt("%.2g", worst_wide) +
                 ", mutation " + fmt("%.2g", worst_mut) + ", pentagon " + fmt("%.2g", pent);
    return res;
}

CriterionResult tag_rule() {
    CriterionResult res{3, "tag rule at valency-one punctures"};
    Rng rng(1003);
    IdealTriangulation D = default_triangulation({0, {2}, 1});
    IdealTriangulation T = flip(D, D.arcs()[1]);
    EdgeId j = -1;
    for (EdgeId e : T.arcs())
        if (T.is_self_folded_interior(e)) j = e;
    EdgeId k = T.pi(j);
    VertexId p = 2;
    int done = 0;
    double worst = 0.0;
    for (int i = 0; i < 40 && done < 10; ++i) {
        CoordinateTuple X;
        X.values[j] = CrossRatio::of(rng.log_uniform(0.3, 3.0));
        X.values[k] = CrossRatio::of(rng.log_uniform(0.3, 3.0));
        DevelopedSystem F = reconstruct(T, X);
        if (classify(puncture_holonomy(F, p)) != MapClass::Semisimple) continue;
        ++done;
        Complex Yj = edge_cross_ratio(F, j).value;
        Complex Yk = edge_cross_ratio(F, k).value;
        DevelopedSystem G = sign_flip(F, p);
        worst = std::max(worst, rel(edge_cross_ratio(G, j).value, 1.0 / Yj));
        worst = std::max(worst, rel(edge_cross_ratio(G, k).value, Yj * Yk));

        // The two signed representatives of one tagged triangulation agree
        // under the j <-> k tagged-arc identification.
        CoordinateTuple Xcan = signed_coordinates(F, TaggedTriangulation{T, Signing::trivial(T)});
        Signing alt = Signing::trivial(T);
        alt.sign[p] = -1;
        CoordinateTuple Xalt = signed_coordinates(F, TaggedTriangulation{T, alt});
        worst = std::max(worst, rel(Xalt.at(k).value, Xcan.at(j).value));
        worst = std::max(worst, rel(Xalt.at(j).value, Xcan.at(k).value));
    }
    if (done < 5) {
        res.detail = "too few semisimple samples";
        return res;
    }
    res.pass = worst <= 1e-10;
    res.detail = "deviation " + fmt("%.3g", worst) + " over " + std::to_string(done) + " samples";
    return res;
}

CriterionResult degeneracy_classifier(bool quick) {
    CriterionResult res{4, "degeneracy classifier (D1/D2/D3 witnesses + generic None)"};
    using K = DegeneracyVerdict::Kind;
    struct Witness {
        DevelopedSystem F;
        K expect;
        const char* tag;
    };
    std::vector<Witness> witnesses;

    // (D1): two adjacent boundary framings equal on boundary surfaces.
    {
        IdealTriangulation d5 = default_triangulation({0, {5}, 0});
        witnesses.push_back({vertex_line_system(d5, {aff({0.0}), aff({0.0}), aff({2.0}),
                                                     aff({-1.0}), inf()}),
                             K::D1, "disc5"});
        IdealTriangulation d6 = default_triangulation({0, {6}, 0});
        witnesses.push_back({vertex_line_system(d6, {aff({3.0}), aff({1.0}), aff({2.0, 1.0}),
                                                     aff({2.0, 1.0}), inf(), aff({-4.0})}),
                             K::D1, "disc6"});
        IdealTriangulation d8 = default_triangulation({0, {8}, 0});
        witnesses.push_back(
            {vertex_line_system(d8, {aff({0.0}), aff({1.0}), aff({2.0}), aff({3.0}), aff({4.0}),
                                     aff({5.0}), inf(), inf()}),
             K::D1, "disc8"});
        IdealTriangulation pp3 = default_triangulation({0, {3}, 1});
        witnesses.push_back({vertex_line_system(pp3, {aff({1.0}), aff({1.0}), aff({-2.0}),
                                                      aff({0.5, 0.5})}),
                             K::D1, "punctured triangle"});
    }
    // (D2), fixed pairs: diagonal holonomies preserving {0, inf}.
    {
        IdealTriangulation s4 = default_triangulation({0, {}, 4});
        DevelopedSystem F;
        F.base = s4;
        F.gluing.assign(s4.edges.size(), std::nullopt);
        Complex mults[3] = {{2.0, 0.0}, {0.5, 1.0}, {-3.0, 0.0}};
        int i = 0;
        for (EdgeId e : s4.arcs())
            F.gluing[e] = ProjectiveMap::from_rows(mults[i++ % 3], {0.0}, {0.0}, {1.0});
        std::vector<ProjectivePoint> lam{aff({0.0}), inf(), aff({0.0}), inf()};
        for (const auto& t : s4.triangles)
            F.corners.push_back({lam[t.corner[0]], lam[t.corner[1]], lam[t.corner[2]]});
        witnesses.push_back({F, K::D2, "sphere diag"});

        witnesses.push_back({torus_fixed_line_system(ProjectiveMap::from_rows({2.0}, {0.0}, {0.0}, {0.5}),
                                                     ProjectiveMap::from_rows({5.0}, {0.0}, {0.0}, {0.2}),
                                                     ProjectiveMap::from_rows({3.0}, {0.0}, {0.0}, {1.0 / 3.0}),
                                                     aff({0.0})),
                             K::D2, "torus diag"});
    }
    // (D2), swapped pair: annulus core holonomy exchanging 0 and infinity
    // (the involution branch of the candidate search).
    witnesses.push_back({annulus_swap_system({1.0, 0.0}), K::D2, "annulus swap"});
    witnesses.push_back({annulus_swap_system({2.0, 1.0}), K::D2, "annulus swap 2"});
    // (D3): a single flat section with parabolic-or-identity punctures.
    {
        ProjectiveMap u1 = ProjectiveMap::from_rows({1.0}, {1.0}, {0.0}, {1.0});
        ProjectiveMap u2 = ProjectiveMap::from_rows({1.0}, {2.0}, {0.0}, {1.0});
        ProjectiveMap id = ProjectiveMap::identity();
        witnesses.push_back({torus_fixed_line_system(u1, id, id, inf()), K::D3, "torus parabolic"});
        witnesses.push_back({torus_fixed_line_system(u1, u2, id, inf()), K::D3, "torus biparabolic"});
        witnesses.push_back(
            {torus_fixed_line_system(u1, ProjectiveMap::from_rows({2.0}, {0.0}, {0.0}, {1.0}), id,
                                     inf()),
             K::D3, "torus mixed"});
        IdealTriangulation s4 = default_triangulation({0, {}, 4});
        DevelopedSystem F;
        F.base = s4;
        F.gluing.assign(s4.edges.size(), std::nullopt);
        int i = 0;
        for (EdgeId e : s4.arcs())
            F.gluing[e] = ProjectiveMap::from_rows({1.0}, {(double)(++i)}, {0.0}, {1.0});
        F.corners.assign(s4.triangles.size(), {inf(), inf(), inf()});
        witnesses.push_back({F, K::D3, "sphere unipotent"});
    }

    if (witnesses.size() != 12) {
        res.detail = "witness table size " + std::to_string(witnesses.size());
        return res;
    }
    bool swap_seen = false;
    for (const auto& w : witnesses) {
        if (!w.F.validate().ok()) {
            res.detail = std::string("witness '") + w.tag + "' is not a consistent system";
            return res;
        }
        DegeneracyVerdict v = degeneracy(w.F);
        if (v.kind != w.expect) {
            res.detail = std::string("witness '") + w.tag + "' classified " +
                         degeneracy_kind_name(v.kind);
            return res;
        }
        if (v.kind == K::D2) {
            for (const auto& r : v.records) swap_seen = swap_seen || r.swaps;
            // Witness re-verification: the pair is fixed or swapped exactly
            // as recorded and contains every framing line.
            Development dev = develop(w.F);
            for (TriId t = 0; t < (TriId)w.F.base.triangles.size(); ++t)
                for (int c = 0; c < 3; ++c) {
                    ProjectivePoint q = dev.developed_corner(w.F, t, c);
                    if (!proj_equal(q, v.pair[0]) && !proj_equal(q, v.pair[1])) {
                        res.detail = "D2 witness framing outside the recorded pair";
                        return res;
                    }
                }
            for (const auto& r : v.records) {
                ProjectiveMap g = r.from_puncture
                                      ? [&] {
                                            TriId t = w.F.base.star(r.id)[0].tri;
                                            return dev.chart_to_global[t] *
                                                   puncture_holonomy(w.F, r.id) *
                                                   dev.chart_to_global[t].inverse();
                                        }()
                                      : cycle_generator(w.F, dev, r.id);
                ProjectivePoint ga = apply(g, v.pair[0]).normalized();
                ProjectivePoint gb = apply(g, v.pair[1]).normalized();
                bool fixes = proj_equal(ga, v.pair[0]) && proj_equal(gb, v.pair[1]);
                bool swaps = proj_equal(ga, v.pair[1]) && proj_equal(gb, v.pair[0]);
                if (r.swaps ? !swaps : !fixes) {
                    res.detail = "D2 generator record does not re-verify";
                    return res;
                }
            }
        }
        // Degeneracy verdicts are invariant under conjugation.
        DegeneracyVerdict cv = degeneracy(
            conjugate(w.F, ProjectiveMap::from_rows({1.2, 0.3}, {-0.4, 0.1}, {0.2, -0.7}, {1.0, 0.0})));
        if (cv.kind != w.expect) {
            res.detail = std::string("witness '") + w.tag + "' changed verdict under conjugation";
            return res;
        }
    }
    if (!swap_seen) {
        res.detail = "no swapped-pair D2 witness exercised the involution branch";
        return res;
    }

    Rng rng(1004);
    int generic = quick ? 20 : 100;
    int count = 0;
    while (count < generic) {
        for (const auto& s : catalog_surfaces()) {
            if (count >= generic) break;
            IdealTriangulation T = default_triangulation(s);
            if (T.arc_count() == 0) continue;
            DevelopedSystem F = reconstruct(T, random_regular_tuple(T, rng.next(), 0.2, 5.0));
            if (!degeneracy(F).none()) {
                res.detail = "generic reconstruct output classified degenerate on " + s.signature();
                return res;
            }
            ++count;
        }
    }
    res.pass = true;
    res.detail = "12 witnesses exact, " + std::to_string(count) + " generic None";
    return res;
}

namespace {

// Reconstruct output with up to `merges` developed framing collisions that
// keep the system valid and non-degenerate.
std::optional<DevelopedSystem> merged_input(const IdealTriangulation& T, Rng& rng, int merges) {
    DevelopedSystem F = reconstruct(T, random_regular_tuple(T, rng.next(), 0.3, 3.0));
    Development dev = develop(F);
    for (int m = 0; m < merges; ++m) {
        VertexId v = rng.pick((int)T.vertices.size());
        VertexId w = rng.pick((int)T.vertices.size());
        if (v == w) continue;
        ProjectivePoint target{};
        bool found = false;
        for (TriId t = 0; t < (TriId)T.triangles.size() && !found; ++t)
            for (int c = 0; c < 3 && !found; ++c)
                if (T.triangles[t].corner[c] == w) {
                    target = dev.developed_corner(F, t, c);
                    found = true;
                }
        if (!found) continue;
        for (TriId t = 0; t < (TriId)T.triangles.size(); ++t)
            for (int c = 0; c < 3; ++c)
                if (T.triangles[t].corner[c] == v)
                    F.corners[t][c] = apply(dev.chart_to_global[t].inverse(), target).normalized();
    }
    if (!F.validate().ok()) return std::nullopt;
    if (!degeneracy(F).none()) return std::nullopt;
    return F;
}

DevelopedSystem all_bad_sphere() {
    IdealTriangulation T = default_triangulation({0, {}, 4});
    DevelopedSystem F;
    F.base = T;
    F.gluing.assign(T.edges.size(), std::nullopt);
    std::vector<ProjectiveMap> gens{
        ProjectiveMap::from_rows({2.0}, {1.0}, {0.0}, {0.5}),
        ProjectiveMap::from_rows({3.0}, {-1.0}, {0.0}, {1.0 / 3.0}),
        ProjectiveMap::from_rows({1.5, 0.5}, {2.0}, {0.0}, Complex{1.0} / Complex{1.5, 0.5}),
        ProjectiveMap::from_rows({0.4}, {0.7}, {0.0}, {2.5}),
        ProjectiveMap::from_rows({5.0}, {0.3}, {0.0}, {0.2}),
        ProjectiveMap::from_rows({1.0, 1.0}, {0.6}, {0.0}, Complex{1.0} / Complex{1.0, 1.0})};
    int i = 0;
    for (EdgeId e : T.arcs()) F.gluing[e] = gens[i++ % gens.size()];
    F.corners.assign(T.triangles.size(), {inf(), inf(), inf()});
    return F;
}

} // namespace

CriterionResult good_search(bool quick) {
    CriterionResult res{5, "good-triangulation search"};
    Rng rng(1005);
    int target = quick ? 30 : 200;
    int solved = 0, with_moves = 0;
    std::vector<MarkedBorderedSurface> pool = catalog_surfaces();
    while (solved < target) {
        const MarkedBorderedSurface& s = pool[rng.pick((int)pool.size())];
        IdealTriangulation T = default_triangulation(s);
        if (T.arc_count() == 0) continue;
        std::optional<DevelopedSystem> F;
        if (!s.boundary.empty()) {
            F = merged_input(T, rng, rng.pick(4));
        } else {
            F = reconstruct(T, random_regular_tuple(T, rng.next(), 0.3, 3.0));
            if (!degeneracy(*F).none()) F.reset();
        }
        if (!F) continue;
        GoodSearchResult r = find_good(*F, T);
        long budget = 20L * T.arc_count() * T.arc_count() + 4;
        if (!r.coords.regular_nonzero() || r.moves > budget) {
            res.detail = "search failed on " + s.signature();
            return res;
        }
        for (EdgeId e : r.tagged.tri.arcs())
            if (edge_class(r.system, e) == EdgeClass::Bad) {
                res.detail = "search returned a bad arc on " + s.signature();
                return res;
            }
        if (!s.boundary.empty() && !r.tagged.signing.trivial_on(r.tagged.tri)) {
            res.detail = "non-trivial signing on a boundary surface";
            return res;
        }
        with_moves += r.moves > 0;
        ++solved;
    }
    // All-bad closed input exercising the sign-flip fallback.
    DevelopedSystem bad = all_bad_sphere();
    if (!bad.validate().ok() || !degeneracy(bad).none()) {
        res.detail = "all-bad witness is not a valid non-degenerate system";
        return res;
    }
    GoodSearchResult r = find_good(bad, bad.base);
    bool flipped = false;
    for (int v = 0; v < 4; ++v) flipped = flipped || r.tagged.signing.sign[v] == -1;
    if (!r.coords.regular_nonzero() || !flipped) {
        res.detail = "sign-flip fallback did not resolve the all-bad sphere";
        return res;
    }
    res.pass = true;
    res.detail = std::to_string(solved) + " inputs (" + std::to_string(with_moves) +
                 " needed moves) + sign-flip fallback";
    return res;
}

CriterionResult eigenvalue_lemma() {
    CriterionResult res{6, "eigenvalue lemma at regular poles"};
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-10;
    double worst = 0.0;
    for (Complex c : {Complex{1.0}, Complex{2.0, 1.0}, Complex{-0.3}}) {
        RationalPotential phi = rat({c}, {{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
        auto poles = analyze(phi);
        int idx = poles[0].at_infinity ? 1 : 0;
        RegularFrame plus = frame_regular(phi, poles, idx, 1, cfg);
        RegularFrame minus = frame_regular(phi, poles, idx, -1, cfg);
        if (proj_equal(plus.line, minus.line)) {
            res.detail = "signs returned the same eigenline";
            return res;
        }
        Complex expected = std::exp(Complex{0.0, kTwoPi} * std::sqrt(1.0 + 4.0 * c));
        worst = std::max(worst, std::abs(plus.eigenvalue_ratio - expected) / std::abs(expected));
    }
    if (worst > 1e-6) {
        res.detail = "eigenvalue ratio deviation " + fmt("%.3g", worst);
        return res;
    }
    RationalPotential log_phi = rat({{-0.25, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
    ProjectiveMap m = monodromy(log_phi, PlanarPath::circle({0.0}, 1.0), cfg);
    if (classify(m) != MapClass::Parabolic ||
        std::abs(std::abs(m.det_normalized().trace()) - 2.0) > 1e-6) {
        res.detail = "log example not parabolic with double eigenvalue -1";
        return res;
    }
    res.pass = true;
    res.detail = "ratio deviation " + fmt("%.3g", worst) + ", parabolic case exact";
    return res;
}

CriterionResult stokes_geometry() {
    CriterionResult res{7, "stokes geometry and opposedness"};
    IntegratorConfig cfg;
    // phi = z and z^2: m-2 rays with the derived angle sets.
    RationalPotential airy = rat({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
    RationalPotential weber = rat({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
    for (int which = 0; which < 2; ++which) {
        const RationalPotential& phi = which ? weber : airy;
        int count = which ? 4 : 3;
        auto poles = analyze(phi);
        const PoleRecord& p = poles[0];
        if ((int)p.stokes_angles.size() != count || (int)p.anti_stokes_angles.size() != count) {
            res.detail = "ray count is not m-2";
            return res;
        }
        std::vector<double> z_angles;
        for (int k = 0; k < count; ++k) z_angles.push_back(p.ray_angle_z(k));
        std::sort(z_angles.begin(), z_angles.end());
        for (int k = 0; k < count; ++k)
            if (std::abs(z_angles[k] - kTwoPi * k / count) > 1e-10) {
                res.detail = "derived stokes angle set is wrong";
                return res;
            }
        for (int k = 0; k < count; ++k) {
            double d = std::remainder(p.anti_stokes_angles[k] - p.stokes_angles[k],
                                      kTwoPi / count);
            if (std::abs(std::abs(d) - M_PI / count) > 1e-10) {
                res.detail = "rays do not interleave at pi/(m-2)";
                return res;
            }
        }
        // Opposedness of all subdominant lines.
        std::vector<ProjectivePoint> lines;
        auto poles2 = poles;
        for (int k = 0; k < count; ++k)
            lines.push_back(subdominant(phi, poles2, 0, k, {0.0}, cfg).line);
        for (int i = 0; i < count; ++i) {
            int j = (i + 1) % count;
            double dist = std::abs(proj_det(lines[i].normalized(), lines[j].normalized())) /
                          (lines[i].normalized().norm() * lines[j].normalized().norm());
            if (dist <= 1e-6) {
                res.detail = "adjacent subdominant lines not opposed";
                return res;
            }
        }
    }
    // Wronskian conservation on the loop transports used by the framing step.
    TransportResult diag;
    monodromy(rat({{1.0, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}),
              PlanarPath::circle({0.0}, 1.0), cfg, &diag);
    if (diag.wronskian_drift > 1e-8) {
        res.detail = "wronskian drift " + fmt("%.3g", diag.wronskian_drift);
        return res;
    }
    // Pullback arithmetic (double cover chart law).
    RationalPotential pulled = pullback_power(rat({{1.0, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}), 2);
    auto ppoles = analyze(pulled);
    if (ppoles.empty() || ppoles[0].at_infinity || ppoles[0].order != 4 ||
        std::abs(pulled.eval({2.0, 0.0}) - Complex{0.25}) > 1e-12) {
        res.detail = "pullback of 1/z^3 is not 4/w^4";
        return res;
    }
    res.pass = true;
    res.detail = "counts, angles, opposedness, drift " + fmt("%.2g", diag.wronskian_drift);
    return res;
}

CriterionResult weber_stability(bool quick) {
    CriterionResult res{8, "weber coordinate stability under tolerance refinement"};
    (void)quick;
    RationalPotential weber = rat({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
    IntegratorConfig coarse;
    coarse.rel_tol = 1e-8;
    IntegratorConfig fine;
    fine.rel_tol = 1e-11;
    BuildResult bc = build_framed(weber, nullptr, nullptr, coarse);
    BuildResult bf = build_framed(weber, nullptr, nullptr, fine);
    CoordinateTuple xc = coordinates(bc.system, bc.tri);
    CoordinateTuple xf = coordinates(bf.system, bf.tri);
    double dev = tuple_rel(xc, xf);
    res.pass = xc.regular_nonzero() && dev < 1e-6;
    res.detail = "coordinate change " + fmt("%.3g", dev) + " under rel_tol 1e-8 -> 1e-11";
    return res;
}

CriterionResult nondegeneracy_theorem(bool quick) {
    CriterionResult res{9, "non-degeneracy of random polynomial monodromy"};
    Rng rng(1009);
    IntegratorConfig cfg;
    int target = quick ? 6 : 50;
    int zero_moves = 0;
    for (int i = 0; i < target; ++i) {
        int deg = 2 + rng.pick(5);
        std::vector<Complex> coeffs(deg + 1);
        for (auto& c : coeffs) c = rng.unit_disc();
        while (std::abs(coeffs[deg]) < 0.3) coeffs[deg] = rng.unit_disc();
        RationalPotential phi = rat(std::move(coeffs), {{1.0, 0.0}});
        BuildResult b = build_framed(phi, nullptr, nullptr, cfg);
        if (!b.system.validate().ok()) {
            res.detail = "pipeline produced an inconsistent system at sample " + std::to_string(i);
            return res;
        }
        if (!degeneracy(b.system).none()) {
            res.detail = "monodromy system classified degenerate at sample " + std::to_string(i);
            return res;
        }
        GoodSearchResult g = find_good(b.system, b.tri);
        if (!g.coords.regular_nonzero()) {
            res.detail = "coordinates not regular nonzero at sample " + std::to_string(i);
            return res;
        }
        zero_moves += g.moves == 0;
    }
    res.pass = true;
    res.detail = std::to_string(target) + " potentials, " + std::to_string(zero_moves) +
                 " needed no moves";
    return res;
}

CriterionResult wkb_sweep_runs(bool quick) {
    CriterionResult res{10, "wkb sweep evaluates across the hbar grid"};
    IntegratorConfig cfg;
    RationalPotential phi = rat({{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
    std::vector<double> hbars = quick ? std::vector<double>{10.0, 0.4}
                                      : std::vector<double>{10.0, 0.4, 0.2, 0.1, 0.05};
    auto rows = wkb_sweep(phi, hbars, cfg);
    for (const auto& row : rows)
        if (!row.coords.regular_nonzero()) {
            res.detail = "non-regular coordinate at hbar " + fmt("%.3g", row.hbar);
            return res;
        }
    res.pass = true;
    res.detail = std::to_string(rows.size()) + " sweep rows regular (slope oracle in acceptance)";
    return res;
}

CriterionResult determinism() {
    CriterionResult res{11, "byte-identical repeated pipeline output"};
    std::string a = pipeline_bytes();
    std::string b = pipeline_bytes();
    res.pass = !a.empty() && a == b;
    res.detail = res.pass ? "two runs, " + std::to_string(a.size()) + " bytes each, identical"
                          : "outputs differ";
    return res;
}

std::vector<CriterionResult> run(bool quick) {
    std::vector<CriterionResult> out;
    out.push_back(rank_law(quick));
    out.push_back(cluster_identities(quick));
    out.push_back(tag_rule());
    out.push_back(degeneracy_classifier(quick));
    out.push_back(good_search(quick));
    out.push_back(eigenvalue_lemma());
    out.push_back(stokes_geometry());
    out.push_back(weber_stability(quick));
    out.push_back(nondegeneracy_theorem(quick));
    out.push_back(wkb_sweep_runs(quick));
    out.push_back(determinism());
    return out;
}

Json report_json(const std::vector<CriterionResult>& results) {
    Json list = Json::array();
    for (const auto& r : results)
        list.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    return Json{{"criteria", list}, {"pass", all_pass(results)}};
}

std::string report_text(const std::vector<CriterionResult>& results) {
    std::string out;
    for (const auto& r : results) {
        out += r.pass ? "[PASS] " : "[FAIL] ";
        out += "criterion " + std::to_string(r.id) + ": " + r.name + " (" + r.detail + ")\n";
    }
    return out;
}

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace mono::selftest
