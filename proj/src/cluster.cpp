#include "mono/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace mono {

bool CoordinateTuple::regular_nonzero() const {
    for (const auto& [e, v] : values)
        if (!v.regular()) return false;
    return true;
}

CrossRatio CoordinateTuple::at(EdgeId e) const {
    auto it = values.find(e);
    if (it == values.end()) fail(ErrorKind::InvalidInput, "no coordinate stored for this arc");
    return it->second;
}

CrossRatio edge_cross_ratio(const DevelopedSystem& F, EdgeId e) {
    const Edge& ed = F.base.edges[e];
    if (ed.kind != EdgeKind::Arc || ed.inc.size() != 2)
        fail(ErrorKind::InvalidInput, "cross ratio requested at a boundary segment");
    auto [tA, sA] = ed.inc[0];
    auto [tB, sB] = ed.inc[1];
    const ProjectivePoint& z1 = F.corners[tA][sA];
    const ProjectivePoint& z3 = F.corners[tA][(sA + 1) % 3];
    const ProjectivePoint& z4 = F.corners[tA][(sA + 2) % 3];
    ProjectivePoint z2 = apply(F.transition(e, 1), F.corners[tB][(sB + 2) % 3]).normalized();
    return cross_ratio(z1, z2, z3, z4);
}

CoordinateTuple coordinates(const DevelopedSystem& F, const IdealTriangulation& T) {
    if (!same_triangulation(F.base, T))
        fail(ErrorKind::TriangulationMismatch, "coordinates require T = F.base");
    CoordinateTuple X;
    for (EdgeId j : T.arcs()) {
        // X_j = Y_j Y_k at a self-folded interior edge. In the once-punctured
        // monogon the encircling edge is a boundary segment with no cross
        // ratio of its own; there X_j is the raw ratio.
        if (T.is_self_folded_interior(j) && T.edges[T.pi(j)].kind == EdgeKind::Arc) {
            X.values[j] = edge_cross_ratio(F, j) * edge_cross_ratio(F, T.pi(j));
        } else {
            X.values[j] = edge_cross_ratio(F, j);
        }
    }
    return X;
}

namespace {

// X -> Y conversion of the reconstruction lemma.
std::map<EdgeId, Complex> y_values(const IdealTriangulation& T, const CoordinateTuple& X) {
    std::map<EdgeId, Complex> Y;
    for (EdgeId j : T.arcs()) {
        CrossRatio x = X.at(j);
        if (!x.regular())
            fail(ErrorKind::NonRegularInput, "reconstruct requires finite nonzero coordinates");
        Y[j] = x.value;
    }
    for (EdgeId j : T.arcs())
        if (T.is_self_folded_interior(j) && T.edges[T.pi(j)].kind == EdgeKind::Arc)
            Y[j] = X.at(j).value / X.at(T.pi(j)).value;
    return Y;
}

} // namespace

DevelopedSystem reconstruct(const IdealTriangulation& T, const CoordinateTuple& X) {
    ValidationReport rep = T.validate();
    if (!rep.ok()) fail(ErrorKind::InvalidInput, "reconstruct on invalid triangulation: " + rep.joined());
    {
        std::vector<EdgeId> arcs = T.arcs();
        if ((int)X.values.size() != (int)arcs.size())
            fail(ErrorKind::InvalidInput, "coordinate tuple domain does not match the arc set");
    }
    std::map<EdgeId, Complex> Y = y_values(T, X);

    DevelopedSystem F;
    F.base = T;
    F.corners.assign(T.triangles.size(),
                     {ProjectivePoint::infinity(), ProjectivePoint::affine({-1.0, 0.0}),
                      ProjectivePoint::affine({0.0, 0.0})});
    F.gluing.assign(T.edges.size(), std::nullopt);
    if (T.triangles.empty()) return F;

    std::vector<char> placed(T.triangles.size(), 0);
    std::vector<char> in_tree(T.edges.size(), 0);
    placed[0] = 1;
    std::deque<TriId> queue{0};
    while (!queue.empty()) {
        TriId t = queue.front();
        queue.pop_front();
        for (int s = 0; s < 3; ++s) {
            EdgeId e = T.triangles[t].side[s];
            const Edge& ed = T.edges[e];
            if (ed.kind != EdgeKind::Arc || in_tree[e]) continue;
            int here = ed.inc[0].tri == t && ed.inc[0].side == s ? 0 : 1;
            auto [tO, sO] = ed.inc[1 - here];
            if (placed[tO]) continue;
            in_tree[e] = 1;
            const ProjectivePoint& z1 = F.corners[t][s];
            const ProjectivePoint& z3 = F.corners[t][(s + 1) % 3];
            const ProjectivePoint& z4 = F.corners[t][(s + 2) % 3];
            ProjectivePoint w = solve_cross_ratio_p2(z1, z3, z4, Y[e]);
            F.corners[tO][sO] = z3;
            F.corners[tO][(sO + 1) % 3] = z1;
            F.corners[tO][(sO + 2) % 3] = w;
            F.gluing[e] = ProjectiveMap::identity();
            placed[tO] = 1;
            queue.push_back(tO);
        }
    }
    for (EdgeId e = 0; e < (EdgeId)T.edges.size(); ++e) {
        const Edge& ed = T.edges[e];
        if (ed.kind != EdgeKind::Arc || in_tree[e]) continue;
        auto [tA, sA] = ed.inc[0];
        auto [tB, sB] = ed.inc[1];
        const ProjectivePoint& z1 = F.corners[tA][sA];
        const ProjectivePoint& z3 = F.corners[tA][(sA + 1) % 3];
        const ProjectivePoint& z4 = F.corners[tA][(sA + 2) % 3];
        ProjectivePoint w = solve_cross_ratio_p2(z1, z3, z4, Y[e]);
        try {
            F.gluing[e] = map_from_triples({z1, z3, w},
                                           {F.corners[tB][(sB + 1) % 3], F.corners[tB][sB],
                                            F.corners[tB][(sB + 2) % 3]});
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::DegenerateTriple) throw;
            // Regular in exact arithmetic, but the tuple develops framing
            // points closer than the projective tolerance resolves.
            fail(ErrorKind::NumericalFailure,
                 "tuple develops colliding framing points beyond double precision at arc " +
                     std::to_string(e));
        }
    }
    return F;
}

CoordinateTuple signed_coordinates(const DevelopedSystem& F, const TaggedTriangulation& tau) {
    if (!same_triangulation(F.base, tau.tri))
        fail(ErrorKind::TriangulationMismatch, "signed coordinates require tau.tri = F.base");
    DevelopedSystem G = F;
    for (VertexId p = 0; p < (VertexId)tau.tri.vertices.size(); ++p)
        if (tau.tri.vertices[p].puncture && tau.signing.at(p) == -1) G = sign_flip(G, p);
    return coordinates(G, tau.tri);
}

CoordinateTuple mutate(const CoordinateTuple& X, const ExchangeMatrix& eps, EdgeId k) {
    CrossRatio xk = X.at(k);
    if (!xk.regular())
        fail(ErrorKind::NonRegularInput, "mutation requires a finite nonzero value at the mutated arc");
    CoordinateTuple R;
    for (const auto& [j, xj] : X.values) {
        if (j == k) {
            R.values[j] = CrossRatio::of(1.0 / xk.value);
            continue;
        }
        int e = eps.entry(j, k);
        if (e == 0) {
            R.values[j] = xj;
            continue;
        }
        Complex pow_term = e > 0 ? 1.0 / xk.value : xk.value; // X_k^{-sgn(eps_jk)}
        Complex factor = 1.0 + pow_term;
        if (std::abs(factor) <= kNum * std::max(1.0, std::abs(pow_term)))
            fail(ErrorKind::MutationPole, "mutation factor 1 + X_k^{-sgn} vanishes");
        Complex scale = std::pow(factor, Complex(-(double)e, 0.0));
        if (xj.kind == CrossRatio::Kind::Value) {
            R.values[j] = CrossRatio::of(xj.value * scale);
        } else {
            R.values[j] = xj; // Zero/Infinite/Indeterminate scale to themselves
        }
    }
    return R;
}

double flip_consistency(const DevelopedSystem& F, const IdealTriangulation& T, EdgeId k) {
    CoordinateTuple X = coordinates(F, T);
    CoordinateTuple Xm = mutate(X, exchange_matrix(T), k);
    DevelopedSystem F2 = flip_framed(F, k);
    CoordinateTuple X2 = coordinates(F2, F2.base);
    double worst = 0.0;
    for (const auto& [j, a] : Xm.values) {
        CrossRatio b = X2.at(j);
        if (a.kind != b.kind) return std::numeric_limits<double>::infinity();
        if (a.kind != CrossRatio::Kind::Value) continue;
        double denom = std::max({1e-300, std::abs(a.value), std::abs(b.value)});
        worst = std::max(worst, std::abs(a.value - b.value) / denom);
    }
    return worst;
}

EdgeClass edge_class(const DevelopedSystem& F, EdgeId e) {
    auto [t, s] = F.base.edges[e].inc[0];
    return proj_equal(F.corners[t][s], F.corners[t][(s + 1) % 3]) ? EdgeClass::Bad : EdgeClass::Good;
}

namespace {

int good_arc_count(const DevelopedSystem& F) {
    int good = 0;
    for (EdgeId e : F.base.arcs()) good += edge_class(F, e) == EdgeClass::Good;
    return good;
}

bool all_edges_bad(const DevelopedSystem& F) {
    for (EdgeId e = 0; e < (EdgeId)F.base.edges.size(); ++e)
        if (edge_class(F, e) == EdgeClass::Good) return false;
    return true;
}

std::vector<EdgeId> flippable_arcs(const IdealTriangulation& T) {
    std::vector<EdgeId> out;
    for (EdgeId e : T.arcs())
        if (!T.is_self_folded_interior(e)) out.push_back(e);
    return out;
}

} // namespace

GoodSearchResult find_good(const DevelopedSystem& F0, const IdealTriangulation& T0,
                           long budget_override) {
    if (!same_triangulation(F0.base, T0))
        fail(ErrorKind::TriangulationMismatch, "find_good requires T0 = F.base");
    if (!degeneracy(F0).none())
        fail(ErrorKind::DegenerateInput, "find_good requires a non-degenerate system");

    DevelopedSystem F = F0;
    Signing sig = Signing::trivial(T0);
    int n = T0.arc_count();
    int total = n + ((int)T0.edges.size() - n);
    long budget = budget_override >= 0 ? budget_override : 20L * n * n + 4;
    int moves = 0;

    auto finish = [&]() {
        // Canonical representative. At a valency-1 puncture left with sign -1
        // the tagged-arc identification swaps the interior and encircling
        // labels; the returned system keeps the signing applied, so its
        // coordinates on the swapped labels equal the canonical-representative
        // values and every arc stays good.
        DevelopedSystem G = F;
        Signing s = sig;
        for (VertexId p = 0; p < (VertexId)G.base.vertices.size(); ++p) {
            if (!G.base.vertices[p].puncture || s.sign[p] != -1) continue;
            if (G.base.valency(p) != 1) continue;
            Incidence c = G.base.star(p)[0];
            EdgeId interior = G.base.triangles[c.tri].side[c.side];
            EdgeId loop = G.base.pi(interior);
            s.sign[p] = 1;
            if (G.base.edges[loop].kind == EdgeKind::Arc) swap_arc_labels(G, interior, loop);
        }
        GoodSearchResult res{TaggedTriangulation::canonical(G.base, s), coordinates(G, G.base),
                             G, moves};
        if (!res.coords.regular_nonzero())
            fail(ErrorKind::NumericalFailure, "good search closed on a non-regular tuple");
        return res;
    };

    while (true) {
        if (budget-- < 0)
            fail(ErrorKind::BudgetExceeded,
                 "good-triangulation search exceeded 20 n^2 moves; input is near the projective "
                 "equality tolerance");
        int cur = good_arc_count(F);
        if (cur == n) return finish();

        // Single strict-improvement flips, lowest arc index among the best.
        int best_gain = 0;
        EdgeId best_arc = -1;
        for (EdgeId a : flippable_arcs(F.base)) {
            DevelopedSystem G = flip_framed(F, a);
            int gain = good_arc_count(G) - cur;
            if (gain > best_gain) { best_gain = gain; best_arc = a; }
        }
        if (best_arc >= 0) {
            F = flip_framed(F, best_arc);
            ++moves;
            continue;
        }

        // Pentagon re-triangulations: all depth-2 flip pairs.
        bool improved = false;
        for (EdgeId a : flippable_arcs(F.base)) {
            DevelopedSystem Ga = flip_framed(F, a);
            for (EdgeId b : flippable_arcs(Ga.base)) {
                if (b == a) continue;
                DevelopedSystem Gb = flip_framed(Ga, b);
                if (good_arc_count(Gb) > cur) {
                    F = Gb;
                    moves += 2;
                    budget--;
                    improved = true;
                    break;
                }
            }
            if (improved) break;
        }
        if (improved) continue;

        // Stall: with every edge bad the framing is a global flat section;
        // flip the sign at the first loxodromic puncture.
        if (all_edges_bad(F) && total > 0) {
            VertexId pick = -1;
            for (VertexId p = 0; p < (VertexId)F.base.vertices.size() && pick < 0; ++p) {
                if (!F.base.vertices[p].puncture) continue;
                if (classify(puncture_holonomy(F, p)) == MapClass::Semisimple) pick = p;
            }
            if (pick >= 0) {
                F = sign_flip(F, pick);
                sig.sign[pick] = -sig.sign[pick];
                ++moves;
                continue;
            }
        }
        fail(ErrorKind::BudgetExceeded, "good-triangulation search stalled");
    }
}

} // namespace mono
