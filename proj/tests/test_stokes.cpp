#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mono/stokes.hpp"
#include "oracles/quadrature.hpp"
#include "oracles/weber.hpp"

using namespace mono;

namespace {

RationalPotential rat(std::initializer_list<Complex> num, std::initializer_list<Complex> den) {
    return RationalPotential::make(Polynomial(std::vector<Complex>(num)),
                                   Polynomial(std::vector<Complex>(den)));
}

RationalPotential airy() { return rat({0.0, 1.0}, {1.0}); }
RationalPotential weber() { return rat({0.0, 0.0, 1.0}, {1.0}); }

int sector_at_angle(const PoleRecord& pole, double theta_z) {
    for (int k = 0; k < (int)pole.stokes_angles.size(); ++k)
        if (std::abs(std::remainder(pole.ray_angle_z(k) - theta_z, 2.0 * M_PI)) < 1e-9) return k;
    return -1;
}

} // namespace

TEST_CASE("airy: three pairwise distinct subdominant lines, known ratio at 0") {
    IntegratorConfig cfg;
    auto poles = analyze(airy());
    REQUIRE(poles.size() == 1);
    std::array<ProjectivePoint, 3> line;
    for (int k = 0; k < 3; ++k) line[k] = subdominant(airy(), poles, 0, k, {0.0}, cfg).line;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) CHECK_FALSE(proj_equal(line[i], line[j], 1e-6));

    // The sector containing the positive real axis is the classical Ai:
    // y'(0)/y(0) = -3^{1/3} Gamma(2/3)/Gamma(1/3).
    int s0 = sector_at_angle(poles[0], 0.0);
    REQUIRE(s0 >= 0);
    ProjectivePoint l = line[s0];
    Complex ratio = -l.b / l.a; // state is (y, -y')
    double expected = -std::pow(3.0, 1.0 / 3.0) * std::tgamma(2.0 / 3.0) / std::tgamma(1.0 / 3.0);
    CHECK(std::abs(ratio - Complex{expected}) < 1e-7);
}

TEST_CASE("subdominant lines are stable under seed and tolerance changes") {
    IntegratorConfig cfg;
    auto poles = analyze(airy());
    ProjectivePoint base = subdominant(airy(), poles, 0, 1, {0.0}, cfg).line;

    IntegratorConfig deeper = cfg;
    deeper.wkb_decay_target = 50.0;
    ProjectivePoint deep = subdominant(airy(), poles, 0, 1, {0.0}, deeper).line;
    CHECK(proj_equal(base, deep, 1e-8));

    IntegratorConfig finer = cfg;
    finer.rel_tol /= 2.0;
    ProjectivePoint fine = subdominant(airy(), poles, 0, 1, {0.0}, finer).line;
    CHECK(proj_equal(base, fine, 1e-8));

    IntegratorConfig pm = cfg;
    pm.wkb_decay_target = 30.0; // +20%
    ProjectivePoint p = subdominant(airy(), poles, 0, 1, {0.0}, pm).line;
    CHECK(proj_equal(base, p, 1e-6));
}

TEST_CASE("weber: recessive ratio matches the series/asymptotic oracle") {
    double oracle = weber_oracle::validated_ratio();
    IntegratorConfig cfg;
    auto poles = analyze(weber());
    REQUIRE(poles[0].order == 6);
    REQUIRE(poles[0].stokes_angles.size() == 4);
    int s0 = sector_at_angle(poles[0], 0.0);
    REQUIRE(s0 >= 0);
    ProjectivePoint l = subdominant(weber(), poles, 0, s0, {0.0}, cfg).line;
    Complex ratio = -l.b / l.a;
    CHECK(std::abs(ratio - Complex{oracle}) < 1e-6);
}

TEST_CASE("weber: the quarter-turn symmetry permutes the sector lines") {
    // u(z) = y(iz) solves the same equation and shifts sectors by one; on
    // values at 0 it acts by diag(1, i) in the (y, -y') state.
    IntegratorConfig cfg;
    auto poles = analyze(weber());
    std::array<ProjectivePoint, 4> line;
    std::array<int, 4> sector{};
    for (int k = 0; k < 4; ++k) {
        double theta = k * M_PI / 2.0;
        sector[k] = sector_at_angle(poles[0], theta);
        REQUIRE(sector[k] >= 0);
        line[k] = subdominant(weber(), poles, 0, sector[k], {0.0}, cfg).line;
    }
    ProjectiveMap D = ProjectiveMap::from_rows({1.0}, {0.0}, {0.0}, {0.0, 1.0});
    for (int k = 0; k < 4; ++k)
        CHECK(proj_equal(line[(k + 3) % 4], apply(D, line[k]), 1e-7));

    // Equivariance of the single coordinate: the relabeled tuple is fixed.
    CrossRatio x = cross_ratio(line[0], line[1], line[2], line[3]);
    CrossRatio xr = cross_ratio(line[1], line[2], line[3], line[0]);
    REQUIRE(x.kind == CrossRatio::Kind::Value);
    REQUIRE(xr.kind == CrossRatio::Kind::Value);
    CHECK(mono::testing::rel_diff(x.value, xr.value) < 1e-9);
}

TEST_CASE("seed placement fails loudly when the radius bound is too small") {
    IntegratorConfig cfg;
    cfg.seed_radius_max = 3.0; // decay 25 needs z out to ~11 for phi = z
    auto poles = analyze(airy());
    CHECK_THROWS_AS(subdominant(airy(), poles, 0, 0, {0.0}, cfg), Error);
    try {
        subdominant(airy(), poles, 0, 0, {0.0}, cfg);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SeedNotFound);
    }
}

TEST_CASE("frame_regular") {
    IntegratorConfig cfg;
    SUBCASE("c/z^2 with c = 1: both signs give distinct eigenlines") {
        RationalPotential phi = rat({1.0}, {0.0, 0.0, 1.0});
        auto poles = analyze(phi);
        int idx = poles[0].at_infinity ? 1 : 0;
        RegularFrame plus = frame_regular(phi, poles, idx, 1, cfg);
        RegularFrame minus = frame_regular(phi, poles, idx, -1, cfg);
        CHECK_FALSE(proj_equal(plus.line, minus.line, 1e-6));
        Complex expected = std::exp(poles[idx].exponent);
        CHECK(std::abs(plus.eigenvalue_ratio - expected) <= 1e-5 * std::abs(expected));
    }
    SUBCASE("r = 0 is rejected as resonant or apparent") {
        RationalPotential phi = rat({-0.25}, {0.0, 0.0, 1.0});
        auto poles = analyze(phi);
        int idx = poles[0].at_infinity ? 1 : 0;
        CHECK_THROWS_AS(frame_regular(phi, poles, idx, 1, cfg), Error);
    }
    SUBCASE("a = -3/16 makes both eigenvalues match: AmbiguousMatch") {
        // r = pi i, so exp(r) = exp(-r) = -1 and the ratio test cannot pick
        // a side even though the monodromy is semisimple.
        RationalPotential phi = rat({-3.0 / 16.0}, {0.0, 0.0, 1.0});
        auto poles = analyze(phi);
        int idx = poles[0].at_infinity ? 1 : 0;
        REQUIRE(classify(monodromy(phi, PlanarPath::circle({0.0}, 1.0), cfg)) ==
                MapClass::Semisimple);
        try {
            frame_regular(phi, poles, idx, 1, cfg);
            FAIL("expected AmbiguousMatch");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::AmbiguousMatch);
        }
    }
}

TEST_CASE("build_framed: polynomial pipeline") {
    IntegratorConfig cfg;
    SUBCASE("z^3 - 1: disc-5 surface, two regular nonzero coordinates") {
        BuildResult b = build_framed(rat({-1.0, 0.0, 0.0, 1.0}, {1.0}), nullptr, nullptr, cfg);
        CHECK(b.surface.boundary == std::vector<int>{5});
        CHECK(b.tri.arc_count() == 2);
        REQUIRE(b.system.validate().ok());
        CoordinateTuple X = coordinates(b.system, b.tri);
        CHECK(X.regular_nonzero());
        CHECK(degeneracy(b.system).none());
    }
    SUBCASE("airy: rank zero, empty tuple, three distinct lines") {
        BuildResult b = build_framed(airy(), nullptr, nullptr, cfg);
        CHECK(b.tri.arc_count() == 0);
        CHECK(coordinates(b.system, b.tri).values.empty());
        CHECK(degeneracy(b.system).none());
    }
    SUBCASE("constant potential: degenerate surface") {
        CHECK_THROWS_AS(build_framed(rat({1.0}, {1.0}), nullptr, nullptr, cfg), Error);
    }
    SUBCASE("non-polynomial without a realization") {
        RationalPotential phi = rat({1.0}, {0.0, 0.0, 1.0});
        CHECK_THROWS_AS(build_framed(phi, nullptr, nullptr, cfg), Error);
    }
}

TEST_CASE("build_framed: planar realization of (z^3+1)/z^2") {
    // Puncture at 0 (a = 1), order-5 pole at infinity with three sectors at
    // z-angles {0, 2pi/3, 4pi/3}; once-punctured triangle, fan from the
    // puncture.
    IntegratorConfig cfg;
    RationalPotential phi = rat({1.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
    auto poles = analyze(phi);
    REQUIRE(poles.size() == 2);
    int p0 = poles[0].at_infinity ? 1 : 0;
    int pinf = 1 - p0;

    PlanarRealization real;
    real.tri = default_triangulation({0, {3}, 1});
    real.anchors.resize(4);
    double R = 2.0 * (1.0 + 0.0); // anchor radius at infinity
    for (int v = 0; v < 3; ++v) {
        int sector = sector_at_angle(poles[pinf], v * 2.0 * M_PI / 3.0);
        REQUIRE(sector >= 0);
        real.anchors[v] = {pinf, sector, R};
    }
    real.anchors[3] = {p0, -1, 0.0};
    for (EdgeId e : real.tri.arcs()) {
        // Arc e joins the puncture to boundary vertex e (fan construction).
        real.arc_paths[e] = PlanarPath::line({0.0}, sector_anchor(poles[pinf], real.anchors[e].sector, R));
    }
    for (TriId t = 0; t < 3; ++t) {
        double mid = (t * 2.0 * M_PI / 3.0) + M_PI / 3.0;
        real.tri_base.push_back(1.3 * Complex{std::cos(mid), std::sin(mid)});
    }

    BuildResult b = build_framed(phi, nullptr, &real, cfg);
    REQUIRE(b.system.validate().ok());
    CHECK(degeneracy(b.system).none());
    CoordinateTuple X = coordinates(b.system, b.tri);
    CHECK(X.regular_nonzero());

    // Puncture holonomy matches the exponent law at the regular pole.
    ProjectiveMap h = puncture_holonomy(b.system, 3);
    REQUIRE(classify(h) == MapClass::Semisimple);
    EigenLines l = fixed_lines(h);
    Complex expected = std::exp(poles[p0].exponent);
    Complex r01 = l.value[0] / l.value[1];
    double err = std::min(std::abs(r01 - expected), std::abs(1.0 / r01 - expected)) /
                 std::abs(expected);
    CHECK(err < 1e-5);

    // Homotopic re-placement of the chart base points moves nothing.
    PlanarRealization real2 = real;
    for (auto& z : real2.tri_base) z *= 1.15;
    BuildResult b2 = build_framed(phi, nullptr, &real2, cfg);
    CoordinateTuple X2 = coordinates(b2.system, b2.tri);
    CHECK(mono::testing::tuple_rel_diff(X, X2) < 1e-6);

    // Signed build: the -1 framing at the puncture is the other eigenline of
    // the same holonomy class, and the build stays consistent.
    Signing minus = Signing::trivial(real.tri);
    minus.sign[3] = -1;
    BuildResult bm = build_framed(phi, &minus, &real, cfg);
    REQUIRE(bm.system.validate().ok());
    CHECK(degeneracy(bm.system).none());
    Incidence at = real.tri.star(3)[0];
    CHECK_FALSE(proj_equal(bm.system.corners[at.tri][at.side], b.system.corners[at.tri][at.side],
                           1e-6));
    ProjectiveMap hm = puncture_holonomy(bm.system, 3);
    CHECK(proj_equal(apply(hm, bm.system.corners[at.tri][at.side]),
                     bm.system.corners[at.tri][at.side], 1e-6));
}

TEST_CASE("wkb sweep on z^2 - 1") {
    IntegratorConfig cfg;
    RationalPotential phi = rat({-1.0, 0.0, 1.0}, {1.0});
    SUBCASE("large hbar smoke") {
        auto rows = wkb_sweep(phi, {10.0}, cfg);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].coords.regular_nonzero());
    }
    SUBCASE("slope of log X vs 1/hbar matches the period quadrature") {
        Complex period = quadrature::weber_like_period(); // i pi
        auto rows = wkb_sweep(phi, {0.2, 0.1, 0.05}, cfg);
        REQUIRE(rows.size() == 3);
        EdgeId arc = rows[0].coords.values.begin()->first;
        // Per-gap slope with principal-branch ambiguity resolved against the
        // oracle; 2 pi jumps are far outside the 2% acceptance band.
        for (int g = 0; g < 2; ++g) {
            Complex dlog = rows[g + 1].log_x.at(arc) - rows[g].log_x.at(arc);
            double dinv = 1.0 / rows[g + 1].hbar - 1.0 / rows[g].hbar;
            double best = INFINITY;
            for (int m = -40; m <= 40; ++m) {
                Complex slope = (dlog + Complex{0.0, 2.0 * M_PI * m}) / dinv;
                best = std::min(best, std::min(std::abs(slope - period), std::abs(slope + period)));
            }
            INFO("gap ", g);
            CHECK(best <= 0.02 * std::abs(period));
        }
        // hbar log X converges toward the period (up to sign and branch).
        Complex h2 = rows[2].hbar_log_x.at(arc);
        double approach = std::min(std::abs(h2 - period), std::abs(h2 + period));
        // A 2 pi m shift scaled by hbar can also appear in the constant term.
        for (int m = -40; m <= 40; ++m) {
            Complex shifted = h2 + Complex{0.0, rows[2].hbar * 2.0 * M_PI * m};
            approach = std::min({approach, std::abs(shifted - period), std::abs(shifted + period)});
        }
        CHECK(approach < 0.15 * std::abs(period));
    }
    SUBCASE("genuinely growing coordinate: complex turning points") {
        // For z^2 - 1 the period is purely imaginary and |X| stays on the
        // unit circle, so |log X| wraps; a complex shift gives Re period != 0
        // and the principal |log X| grows monotonically.
        RationalPotential grow = rat({Complex{-1.0, -1.0}, 0.0, 1.0}, {1.0}); // z^2 - (1+i)
        auto rows = wkb_sweep(grow, {0.4, 0.2, 0.1}, cfg);
        EdgeId arc = rows[0].coords.values.begin()->first;
        CHECK(std::abs(rows[1].log_x.at(arc).real()) > std::abs(rows[0].log_x.at(arc).real()));
        CHECK(std::abs(rows[2].log_x.at(arc).real()) > std::abs(rows[1].log_x.at(arc).real()));
    }
}
