#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mono/cluster.hpp"

using namespace mono;
using mono::testing::Rng;

namespace {

ProjectivePoint pt(double re, double im = 0.0) { return ProjectivePoint::affine({re, im}); }

ProjectiveMap random_map(Rng& rng) {
    while (true) {
        ProjectiveMap m{rng.unit_disc(), rng.unit_disc(), rng.unit_disc(), rng.unit_disc()};
        if (std::abs(m.det()) > 1e-3) return m;
    }
}

// Disc systems have a single global chart: identity gluings, one framing line
// per vertex.
DevelopedSystem disc_system(int k, const std::vector<ProjectivePoint>& lines) {
    IdealTriangulation T = default_triangulation({0, {k}, 0});
    DevelopedSystem F;
    F.base = T;
    F.gluing.assign(T.edges.size(), std::nullopt);
    for (EdgeId e : T.arcs()) F.gluing[e] = ProjectiveMap::identity();
    for (const auto& t : T.triangles)
        F.corners.push_back({lines[t.corner[0]], lines[t.corner[1]], lines[t.corner[2]]});
    return F;
}

// Once-punctured torus with prescribed gluings; every corner carries `line`.
// Only valid when the gluings fix the developed copies, e.g. maps fixing
// `line` itself.
DevelopedSystem torus_system(const ProjectiveMap& ga, const ProjectiveMap& gb,
                             const ProjectiveMap& gc, const ProjectivePoint& line) {
    IdealTriangulation T = default_triangulation({1, {}, 1});
    DevelopedSystem F;
    F.base = T;
    F.gluing = {ga, gb, gc};
    F.corners.assign(2, {line, line, line});
    return F;
}

DevelopedSystem sphere4_diagonal_system(const std::vector<Complex>& mults,
                                        const std::vector<ProjectivePoint>& corner_values) {
    IdealTriangulation T = default_triangulation({0, {}, 4});
    DevelopedSystem F;
    F.base = T;
    F.gluing.assign(T.edges.size(), std::nullopt);
    size_t i = 0;
    for (EdgeId e : T.arcs())
        F.gluing[e] = ProjectiveMap::from_rows(mults[i++ % mults.size()], {0}, {0}, {1});
    for (const auto& t : T.triangles)
        F.corners.push_back({corner_values[t.corner[0] % corner_values.size()],
                             corner_values[t.corner[1] % corner_values.size()],
                             corner_values[t.corner[2] % corner_values.size()]});
    return F;
}

} // namespace

TEST_CASE("validate accepts reconstruct output and flags perturbations") {
    Rng rng(31);
    for (const auto& s : mono::testing::catalog()) {
        IdealTriangulation T = default_triangulation(s);
        if (T.arc_count() == 0) continue;
        DevelopedSystem F = reconstruct(T, mono::testing::random_tuple(T, rng));
        INFO(s.signature(), ": ", F.validate().joined());
        CHECK(F.validate().ok());

        DevelopedSystem bad = F;
        EdgeId a = T.arcs()[0];
        ProjectiveMap p = ProjectiveMap::from_rows({1.0}, {0.3}, {0.1}, {1.0});
        bad.gluing[a] = (*bad.gluing[a]) * p;
        CHECK_FALSE(bad.validate().ok());
    }
}

TEST_CASE("identity-gluing disc system validates") {
    std::vector<ProjectivePoint> lines{pt(0), pt(1), pt(2), pt(-1), ProjectivePoint::infinity()};
    DevelopedSystem F = disc_system(5, lines);
    CHECK(F.validate().ok());
}

TEST_CASE("puncture holonomy") {
    Rng rng(32);
    SUBCASE("identity gluings give identity holonomy") {
        DevelopedSystem F = sphere4_diagonal_system({Complex{1.0}}, {pt(0), pt(1), pt(2), pt(3)});
        for (VertexId p = 0; p < 4; ++p)
            CHECK(classify(puncture_holonomy(F, p)) == MapClass::Identity);
    }
    SUBCASE("holonomy fixes the framing corner; trace is conjugation-invariant") {
        for (const auto& s : mono::testing::catalog()) {
            if (s.punctures == 0) continue;
            IdealTriangulation T = default_triangulation(s);
            DevelopedSystem F = reconstruct(T, mono::testing::random_tuple(T, rng, 0.2, 5.0));
            for (VertexId p = 0; p < (VertexId)T.vertices.size(); ++p) {
                if (!T.vertices[p].puncture) continue;
                ProjectiveMap h = puncture_holonomy(F, p);
                Incidence anchor = T.star(p)[0];
                CHECK(proj_equal(apply(h, F.corners[anchor.tri][anchor.side]),
                                 F.corners[anchor.tri][anchor.side], 1e-6));
                ProjectiveMap g = random_map(rng);
                ProjectiveMap h2 = puncture_holonomy(conjugate(F, g), p);
                Complex t1 = h.det_normalized().trace();
                Complex t2 = h2.det_normalized().trace();
                CHECK(std::min(std::abs(t1 - t2), std::abs(t1 + t2)) < 1e-6 * (1.0 + std::abs(t1)));
            }
        }
    }
    SUBCASE("eigenvalue ratio equals the product of coordinates at the puncture") {
        IdealTriangulation T = default_triangulation({0, {2}, 1});
        for (int trial = 0; trial < 20; ++trial) {
            CoordinateTuple X = mono::testing::random_tuple(T, rng, 0.2, 5.0);
            DevelopedSystem F = reconstruct(T, X);
            ProjectiveMap h = puncture_holonomy(F, 2);
            if (classify(h) != MapClass::Semisimple) continue;
            EigenLines l = fixed_lines(h);
            Complex ratio = l.value[0] / l.value[1];
            Complex prod = X.at(T.arcs()[0]).value * X.at(T.arcs()[1]).value;
            double err = std::min(std::abs(ratio - prod), std::abs(1.0 / ratio - prod)) /
                         std::max(1.0, std::abs(prod));
            CHECK(err < 1e-8);
        }
    }
    SUBCASE("non-puncture input throws") {
        IdealTriangulation T = default_triangulation({0, {5}, 0});
        DevelopedSystem F = reconstruct(T, mono::testing::random_tuple(T, rng));
        CHECK_THROWS_AS(puncture_holonomy(F, 0), Error);
    }
}

TEST_CASE("degeneracy witnesses") {
    SUBCASE("D1: adjacent boundary framings equal") {
        std::vector<ProjectivePoint> lines{pt(0), pt(0), pt(2), pt(-1), ProjectivePoint::infinity()};
        DevelopedSystem F = disc_system(5, lines);
        DegeneracyVerdict v = degeneracy(F);
        REQUIRE(v.kind == DegeneracyVerdict::Kind::D1);
        auto [t, s] = F.base.edges[v.boundary_witness].inc[0];
        CHECK(proj_equal(F.corners[t][s], F.corners[t][(s + 1) % 3]));
    }
    SUBCASE("D2: diagonal gluings, framings in {0, inf}") {
        DevelopedSystem F = sphere4_diagonal_system(
            {Complex{2.0}, Complex{0.5, 1.0}, Complex{-3.0}},
            {pt(0), ProjectivePoint::infinity(), pt(0), ProjectivePoint::infinity()});
        DegeneracyVerdict v = degeneracy(F);
        REQUIRE(v.kind == DegeneracyVerdict::Kind::D2);
        bool pair_ok =
            (proj_equal(v.pair[0], pt(0)) && proj_equal(v.pair[1], ProjectivePoint::infinity())) ||
            (proj_equal(v.pair[1], pt(0)) && proj_equal(v.pair[0], ProjectivePoint::infinity()));
        CHECK(pair_ok);
        for (const auto& r : v.records) CHECK_FALSE(r.swaps);
    }
    SUBCASE("D2 via the involution branch: the annulus core swaps the pair") {
        // Puncture loops fix the two lines individually, so a swapping
        // generator needs a non-peripheral cycle: the annulus core. Corner
        // slots are propagated through the swap so the presentation stays
        // consistent.
        IdealTriangulation T = default_triangulation({0, {1, 1}, 0});
        ProjectiveMap S = ProjectiveMap::from_rows({0}, {1}, {1}, {0});
        DevelopedSystem F;
        F.base = T;
        F.gluing.assign(T.edges.size(), std::nullopt);
        F.gluing[1] = ProjectiveMap::identity();
        F.gluing[0] = S;
        ProjectivePoint y = pt(0), z = pt(0);
        ProjectivePoint x = apply(S, y).normalized(), w = apply(S, z).normalized();
        TriId tA = T.edges[1].inc[0].tri;
        F.corners.assign(2, {x, y, z});
        F.corners[tA] = {x, y, z};
        F.corners[1 - tA] = {x, z, w};
        REQUIRE(F.validate().ok());
        DegeneracyVerdict v = degeneracy(F);
        REQUIRE(v.kind == DegeneracyVerdict::Kind::D2);
        bool any_swap = false;
        for (const auto& r : v.records) any_swap = any_swap || r.swaps;
        CHECK(any_swap);
    }
    SUBCASE("D3: all framings along a common parabolic-fixed section") {
        ProjectiveMap par = ProjectiveMap::from_rows({1}, {1}, {0}, {1});
        DevelopedSystem F = torus_system(par, ProjectiveMap::identity(), ProjectiveMap::identity(),
                                         ProjectivePoint::infinity());
        REQUIRE(F.validate().ok());
        DegeneracyVerdict v = degeneracy(F);
        REQUIRE(v.kind == DegeneracyVerdict::Kind::D3);
        CHECK(proj_equal(v.common, ProjectivePoint::infinity()));
        CHECK(classify(puncture_holonomy(F, 0)) != MapClass::Semisimple);
    }
    SUBCASE("random reconstruct outputs are non-degenerate") {
        Rng rng(33);
        for (const auto& s : mono::testing::catalog()) {
            IdealTriangulation T = default_triangulation(s);
            if (T.arc_count() == 0) continue;
            for (int i = 0; i < 10; ++i) {
                DevelopedSystem F = reconstruct(T, mono::testing::random_tuple(T, rng, 0.2, 5.0));
                CHECK(degeneracy(F).none());
            }
        }
    }
}

TEST_CASE("conjugation invariance") {
    Rng rng(34);
    IdealTriangulation T = default_triangulation({0, {6}, 0});
    CoordinateTuple X = mono::testing::random_tuple(T, rng);
    DevelopedSystem F = reconstruct(T, X);
    for (int i = 0; i < 10; ++i) {
        ProjectiveMap g = random_map(rng);
        DevelopedSystem G = conjugate(F, g);
        CHECK(G.validate().ok());
        CHECK(mono::testing::tuple_rel_diff(coordinates(G, T), X) < 1e-8);
        CHECK(degeneracy(G).kind == degeneracy(F).kind);
    }
}

TEST_CASE("sign flip") {
    Rng rng(35);
    IdealTriangulation T = default_triangulation({0, {2}, 1});
    VertexId p = 2;
    SUBCASE("involution, validity, degeneracy invariance") {
        int done = 0;
        for (int i = 0; i < 20 && done < 10; ++i) {
            DevelopedSystem F = reconstruct(T, mono::testing::random_tuple(T, rng, 0.2, 5.0));
            if (classify(puncture_holonomy(F, p)) != MapClass::Semisimple) continue;
            ++done;
            DevelopedSystem G = sign_flip(F, p);
            CHECK(G.validate().ok());
            CHECK(degeneracy(G).kind == degeneracy(F).kind);
            DevelopedSystem H = sign_flip(G, p);
            CHECK(mono::testing::tuple_rel_diff(coordinates(H, T), coordinates(F, T)) < 1e-8);
        }
        CHECK(done > 0);
    }
    SUBCASE("parabolic holonomy is rejected") {
        // Product of coordinates 1 at the puncture makes the holonomy unipotent.
        CoordinateTuple X;
        X.values[T.arcs()[0]] = CrossRatio::of({2.0, 0.0});
        X.values[T.arcs()[1]] = CrossRatio::of({0.5, 0.0});
        DevelopedSystem F = reconstruct(T, X);
        CHECK(classify(puncture_holonomy(F, p)) != MapClass::Semisimple);
        CHECK_THROWS_AS(sign_flip(F, p), Error);
    }
}
