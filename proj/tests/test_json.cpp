#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mono/json_io.hpp"

using namespace mono;
using mono::testing::Rng;

TEST_CASE("surface and triangulation round-trip") {
    Rng rng(71);
    for (const auto& s : mono::testing::catalog()) {
        MarkedBorderedSurface s2 = surface_from_json(to_json(s));
        CHECK(s2 == s);
        IdealTriangulation T = default_triangulation(s);
        // A few flips so non-seed presentations round-trip too.
        for (int i = 0; i < 5 && T.arc_count() > 0; ++i) {
            std::vector<EdgeId> fl;
            for (EdgeId e : T.arcs())
                if (!T.is_self_folded_interior(e)) fl.push_back(e);
            if (fl.empty()) break;
            T = flip(T, fl[rng.pick((int)fl.size())]);
        }
        IdealTriangulation T2 = triangulation_from_json(to_json(T));
        CHECK(same_triangulation(T, T2));
    }
}

TEST_CASE("framed system and tuple round-trip") {
    Rng rng(72);
    IdealTriangulation T = default_triangulation({0, {2}, 1});
    CoordinateTuple X = mono::testing::random_tuple(T, rng, 0.2, 5.0);
    DevelopedSystem F = reconstruct(T, X);
    DevelopedSystem F2 = system_from_json(to_json(F));
    CHECK(F2.validate().ok());
    CHECK(mono::testing::tuple_rel_diff(coordinates(F2, F2.base), X) < 1e-9);

    CoordinateTuple Y = tuple_from_json(to_json(X));
    CHECK(mono::testing::tuple_rel_diff(X, Y) == 0.0);

    CoordinateTuple with_tags = X;
    with_tags.values[T.arcs()[0]] = CrossRatio::zero();
    CoordinateTuple Z = tuple_from_json(to_json(with_tags));
    CHECK(Z.at(T.arcs()[0]).kind == CrossRatio::Kind::Zero);

    std::string csv = tuple_csv(with_tags);
    CHECK(csv.rfind("arc_id,re,im\n", 0) == 0);
    CHECK(csv.find("zero") != std::string::npos);
}

TEST_CASE("potential and pole table serialization") {
    Json j = Json::parse(R"({"numerator": [{"re":-1,"im":0},0,0,{"re":1,"im":0}]})");
    RationalPotential phi = potential_from_json(j);
    CHECK(phi.is_polynomial());
    CHECK(phi.num.degree() == 3);
    auto poles = analyze(phi);
    Json table = poles_to_json(poles);
    CHECK(table.size() == 1);
    CHECK(table[0]["order"] == 7);
    CHECK(table[0]["location"] == "inf");
    RationalPotential back = potential_from_json(to_json(phi));
    CHECK(back.num.c == phi.num.c);
    CHECK(back.den.c == phi.den.c);
}

TEST_CASE("signing round-trip rejects non-punctures") {
    IdealTriangulation T = default_triangulation({0, {2}, 1});
    Signing s = Signing::trivial(T);
    s.sign[2] = -1;
    Json j = signing_to_json(s, T);
    Signing s2 = signing_from_json(j, T);
    CHECK(s2.sign == s.sign);
    CHECK_THROWS_AS(signing_from_json(Json{{"0", -1}}, T), Error); // boundary vertex
}

TEST_CASE("exchange matrix serialization") {
    IdealTriangulation T = default_triangulation({0, {6}, 0});
    ExchangeMatrix m = exchange_matrix(T);
    ExchangeMatrix m2 = exchange_from_json(to_json(m));
    CHECK(m2.arcs == m.arcs);
    CHECK(m2.eps == m.eps);
}

TEST_CASE("paths and realizations parse") {
    Json j = Json::parse(R"({"segments": [
        {"kind": "line", "from": {"re": 0, "im": 0}, "to": {"re": 1, "im": 0}},
        {"kind": "arc", "center": {"re": 1, "im": 1}, "radius": 1.0,
         "theta0": -1.5707963267948966, "theta1": 0.0}]})");
    PlanarPath p = path_from_json(j);
    CHECK(p.segments.size() == 2);
    CHECK(std::abs(p.end() - Complex{2.0, 1.0}) < 1e-12);
    Json bad = j;
    bad["segments"][1]["theta0"] = 1.0; // breaks continuity
    CHECK_THROWS_AS(path_from_json(bad), Error);
}

TEST_CASE("svg output sketches poles and rays") {
    RationalPotential phi = RationalPotential::make(
        Polynomial({Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}}),
        Polynomial({Complex{0.0}, Complex{0.0}, Complex{1.0}}));
    std::string svg = analyze_svg(analyze(phi));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("stroke-dasharray") != std::string::npos); // anti-Stokes rays
    CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("degeneracy verdict serialization") {
    // D1 witness.
    IdealTriangulation T = default_triangulation({0, {5}, 0});
    DevelopedSystem F;
    F.base = T;
    F.gluing.assign(T.edges.size(), std::nullopt);
    for (EdgeId e : T.arcs()) F.gluing[e] = ProjectiveMap::identity();
    std::vector<ProjectivePoint> lines{ProjectivePoint::affine({0.0}), ProjectivePoint::affine({0.0}),
                                       ProjectivePoint::affine({2.0}), ProjectivePoint::affine({-1.0}),
                                       ProjectivePoint::infinity()};
    for (const auto& t : T.triangles)
        F.corners.push_back({lines[t.corner[0]], lines[t.corner[1]], lines[t.corner[2]]});
    Json j = to_json(degeneracy(F));
    CHECK(j["kind"] == "D1");
    CHECK(j.contains("boundary_witness"));
}
