#include "mono/framed.hpp"

#include <algorithm>
#include <deque>

namespace mono {

ProjectiveMap DevelopedSystem::transition(EdgeId e, int from) const {
    if (!gluing[e]) fail(ErrorKind::InvalidInput, "edge has no gluing map");
    return from == 0 ? *gluing[e] : gluing[e]->inverse();
}

ValidationReport DevelopedSystem::validate() const {
    ValidationReport rep = base.validate();
    auto bad = [&](const std::string& s) { rep.violations.push_back(s); };
    if (corners.size() != base.triangles.size()) bad("corner table size mismatch");
    if (gluing.size() != base.edges.size()) bad("gluing table size mismatch");
    if (!rep.ok()) return rep;
    for (EdgeId e = 0; e < (EdgeId)base.edges.size(); ++e) {
        const Edge& ed = base.edges[e];
        if (ed.kind == EdgeKind::Boundary) {
            if (gluing[e]) bad("boundary segment " + std::to_string(e) + " carries a gluing");
            continue;
        }
        if (!gluing[e]) { bad("arc " + std::to_string(e) + " has no gluing"); continue; }
        auto [tA, sA] = ed.inc[0];
        auto [tB, sB] = ed.inc[1];
        const ProjectiveMap& g = *gluing[e];
        if (!proj_equal(apply(g, corners[tA][sA]), corners[tB][(sB + 1) % 3]) ||
            !proj_equal(apply(g, corners[tA][(sA + 1) % 3]), corners[tB][sB]))
            bad("gluing of arc " + std::to_string(e) + " does not match its corner points");
    }
    return rep;
}

Development develop(const DevelopedSystem& F) {
    const IdealTriangulation& T = F.base;
    Development dev;
    dev.chart_to_global.assign(T.triangles.size(), ProjectiveMap::identity());
    std::vector<char> placed(T.triangles.size(), 0);
    if (T.triangles.empty()) return dev;
    placed[0] = 1;
    std::deque<TriId> queue{0};
    std::vector<char> used(T.edges.size(), 0);
    while (!queue.empty()) {
        TriId t = queue.front();
        queue.pop_front();
        for (int s = 0; s < 3; ++s) {
            EdgeId e = T.triangles[t].side[s];
            const Edge& ed = T.edges[e];
            if (ed.kind != EdgeKind::Arc || used[e]) continue;
            int here = ed.inc[0].tri == t && ed.inc[0].side == s ? 0 : 1;
            TriId other = ed.inc[1 - here].tri;
            if (placed[other]) continue;
            used[e] = 1;
            dev.tree.push_back(e);
            // transition(e, 1-here): chart(other) -> chart(t)
            dev.chart_to_global[other] = dev.chart_to_global[t] * F.transition(e, 1 - here);
            placed[other] = 1;
            queue.push_back(other);
        }
    }
    for (TriId t = 0; t < (TriId)T.triangles.size(); ++t)
        if (!placed[t]) fail(ErrorKind::InvalidInput, "disconnected triangulation");
    for (EdgeId e = 0; e < (EdgeId)T.edges.size(); ++e)
        if (T.edges[e].kind == EdgeKind::Arc && !used[e]) dev.cycles.push_back(e);
    return dev;
}

ProjectivePoint Development::developed_corner(const DevelopedSystem& F, TriId t, int c) const {
    return apply(chart_to_global[t], F.corners[t][c % 3]).normalized();
}

ProjectiveMap cycle_generator(const DevelopedSystem& F, const Development& dev, EdgeId e) {
    auto [tA, sA] = F.base.edges[e].inc[0];
    auto [tB, sB] = F.base.edges[e].inc[1];
    (void)sA; (void)sB;
    // Crossing from tA into tB and returning through the tree.
    return dev.chart_to_global[tA] * F.transition(e, 1) * dev.chart_to_global[tB].inverse();
}

namespace {

struct StarStep {
    Incidence at;        // (triangle, corner slot at p)
    ProjectiveMap to_anchor; // chart(at.tri) -> chart(anchor)
};

// Star walk with partial developing maps; the closing holonomy comes last.
std::pair<std::vector<StarStep>, ProjectiveMap> star_development(const DevelopedSystem& F,
                                                                 VertexId p) {
    std::vector<Incidence> walk = F.base.star(p);
    std::vector<StarStep> steps;
    ProjectiveMap acc = ProjectiveMap::identity();
    for (size_t i = 0; i < walk.size(); ++i) {
        steps.push_back({walk[i], acc});
        const Incidence& cur = walk[i];
        EdgeId e = F.base.triangles[cur.tri].side[(cur.side + 2) % 3];
        Incidence crossed{cur.tri, (cur.side + 2) % 3};
        int here = F.base.edges[e].inc[0] == crossed ? 0 : 1;
        // transition(e, 1-here): chart(next) -> chart(cur)
        acc = acc * F.transition(e, 1 - here);
    }
    return {steps, acc};
}

} // namespace

ProjectiveMap puncture_holonomy(const DevelopedSystem& F, VertexId p) {
    return star_development(F, p).second;
}

const char* degeneracy_kind_name(DegeneracyVerdict::Kind k) {
    switch (k) {
        case DegeneracyVerdict::Kind::None: return "None";
        case DegeneracyVerdict::Kind::D1: return "D1";
        case DegeneracyVerdict::Kind::D2: return "D2";
        case DegeneracyVerdict::Kind::D3: return "D3";
    }
    return "?";
}

namespace {

struct Generator {
    bool from_puncture;
    int id;
    ProjectiveMap g;
};

std::vector<Generator> global_generators(const DevelopedSystem& F, const Development& dev) {
    std::vector<Generator> gens;
    for (EdgeId e : dev.cycles) gens.push_back({false, e, cycle_generator(F, dev, e)});
    for (VertexId v = 0; v < (VertexId)F.base.vertices.size(); ++v) {
        if (!F.base.vertices[v].puncture) continue;
        TriId t = F.base.star(v)[0].tri;
        ProjectiveMap h = puncture_holonomy(F, v);
        gens.push_back({true, v, dev.chart_to_global[t] * h * dev.chart_to_global[t].inverse()});
    }
    return gens;
}

std::vector<ProjectivePoint> developed_framings(const DevelopedSystem& F, const Development& dev) {
    std::vector<ProjectivePoint> pts;
    for (TriId t = 0; t < (TriId)F.base.triangles.size(); ++t)
        for (int c = 0; c < 3; ++c) pts.push_back(dev.developed_corner(F, t, c));
    return pts;
}

// Checks a candidate pair against every generator and framing point.
std::optional<std::vector<D2GeneratorRecord>> check_pair(const std::vector<Generator>& gens,
                                                         const std::vector<ProjectivePoint>& framings,
                                                         const ProjectivePoint& a,
                                                         const ProjectivePoint& b) {
    if (proj_equal(a, b)) return std::nullopt;
    for (const auto& q : framings)
        if (!proj_equal(q, a) && !proj_equal(q, b)) return std::nullopt;
    std::vector<D2GeneratorRecord> recs;
    for (const auto& gen : gens) {
        ProjectivePoint ga = apply(gen.g, a).normalized();
        ProjectivePoint gb = apply(gen.g, b).normalized();
        if (proj_equal(ga, a) && proj_equal(gb, b)) {
            recs.push_back({gen.from_puncture, gen.id, false});
        } else if (proj_equal(ga, b) && proj_equal(gb, a)) {
            recs.push_back({gen.from_puncture, gen.id, true});
        } else {
            return std::nullopt;
        }
    }
    return recs;
}

std::optional<DegeneracyVerdict> check_d2(const DevelopedSystem& F, const Development& dev) {
    std::vector<Generator> gens = global_generators(F, dev);
    std::vector<ProjectivePoint> framings = developed_framings(F, dev);
    const Generator* semisimple = nullptr;
    for (const auto& gen : gens) {
        MapClass c = classify(gen.g);
        if (c == MapClass::Parabolic) return std::nullopt; // a parabolic preserves no pair
        if (c == MapClass::Semisimple && !semisimple) semisimple = &gen;
    }
    auto accept = [&](const ProjectivePoint& a, const ProjectivePoint& b)
        -> std::optional<DegeneracyVerdict> {
        auto recs = check_pair(gens, framings, a, b);
        if (!recs) return std::nullopt;
        DegeneracyVerdict v;
        v.kind = DegeneracyVerdict::Kind::D2;
        v.pair = {a.normalized(), b.normalized()};
        v.records = std::move(*recs);
        return v;
    };
    if (semisimple) {
        EigenLines lines = fixed_lines(semisimple->g);
        if (auto v = accept(lines.line[0], lines.line[1])) return v;
        // Swapped pairs {q, h q} survive only when h is an involution.
        ProjectiveMap h2 = semisimple->g * semisimple->g;
        if (classify(h2) == MapClass::Identity) {
            for (const auto& q : framings) {
                ProjectivePoint hq = apply(semisimple->g, q).normalized();
                if (proj_equal(q, hq)) continue;
                if (auto v = accept(q, hq)) return v;
            }
        }
        return std::nullopt;
    }
    // All generators are the identity: any pair containing every framing works.
    std::vector<ProjectivePoint> distinct;
    for (const auto& q : framings) {
        bool seen = false;
        for (const auto& d : distinct) seen = seen || proj_equal(q, d);
        if (!seen) distinct.push_back(q);
    }
    if (distinct.size() > 2) return std::nullopt;
    ProjectivePoint a = distinct[0];
    ProjectivePoint b = distinct.size() == 2
                            ? distinct[1]
                            : (proj_equal(a, ProjectivePoint::infinity())
                                   ? ProjectivePoint::affine({0.0, 0.0})
                                   : ProjectivePoint::infinity());
    return accept(a, b);
}

} // namespace

DegeneracyVerdict degeneracy(const DevelopedSystem& F) {
    const IdealTriangulation& T = F.base;
    // (D1) per boundary segment, inside its triangle's chart.
    for (EdgeId e = 0; e < (EdgeId)T.edges.size(); ++e) {
        if (T.edges[e].kind != EdgeKind::Boundary) continue;
        auto [t, s] = T.edges[e].inc[0];
        if (proj_equal(F.corners[t][s], F.corners[t][(s + 1) % 3])) {
            DegeneracyVerdict v;
            v.kind = DegeneracyVerdict::Kind::D1;
            v.boundary_witness = e;
            return v;
        }
    }
    Development dev = develop(F);
    if (auto v = check_d2(F, dev)) return *v;
    if (T.surface.closed()) {
        std::vector<ProjectivePoint> framings = developed_framings(F, dev);
        ProjectivePoint common = framings.front();
        bool all_equal = true;
        for (const auto& q : framings) all_equal = all_equal && proj_equal(q, common);
        if (all_equal) {
            for (EdgeId e : dev.cycles)
                all_equal = all_equal && proj_equal(apply(cycle_generator(F, dev, e), common), common);
        }
        if (all_equal) {
            bool punctures_ok = true;
            for (VertexId v = 0; v < (VertexId)T.vertices.size() && punctures_ok; ++v) {
                if (!T.vertices[v].puncture) continue;
                MapClass c = classify(puncture_holonomy(F, v));
                punctures_ok = c == MapClass::Parabolic || c == MapClass::Identity;
            }
            if (punctures_ok) {
                DegeneracyVerdict v;
                v.kind = DegeneracyVerdict::Kind::D3;
                v.common = common.normalized();
                return v;
            }
        }
    }
    return {};
}

DevelopedSystem conjugate(const DevelopedSystem& F, const ProjectiveMap& g) {
    DevelopedSystem R = F;
    ProjectiveMap gi = g.inverse();
    for (auto& tri : R.corners)
        for (auto& pt : tri) pt = apply(g, pt).normalized();
    for (auto& m : R.gluing)
        if (m) m = g * (*m) * gi;
    return R;
}

DevelopedSystem sign_flip(const DevelopedSystem& F, VertexId p) {
    auto [steps, hol] = star_development(F, p);
    if (classify(hol) != MapClass::Semisimple)
        fail(ErrorKind::NonSemisimpleHolonomy,
             "puncture holonomy is " + std::string(map_class_name(classify(hol))));
    EigenLines lines = fixed_lines(hol);
    const Incidence& anchor = steps.front().at;
    ProjectivePoint cur = F.corners[anchor.tri][anchor.side];
    ProjectivePoint fresh;
    if (proj_equal(cur, lines.line[0], 1e-6)) {
        fresh = lines.line[1];
    } else if (proj_equal(cur, lines.line[1], 1e-6)) {
        fresh = lines.line[0];
    } else {
        fail(ErrorKind::NumericalFailure, "framing at the puncture is not an eigenline of its holonomy");
    }
    DevelopedSystem R = F;
    for (const StarStep& st : steps)
        R.corners[st.at.tri][st.at.side] = apply(st.to_anchor.inverse(), fresh).normalized();
    return R;
}

DevelopedSystem flip_framed(const DevelopedSystem& F, EdgeId a) {
    const IdealTriangulation& T = F.base;
    FlipFrame f = flip_frame(T, a);
    ProjectiveMap mBA = F.transition(a, 1); // chart(tB) -> chart(tA)

    ProjectivePoint A = F.corners[f.tA][f.sA];
    ProjectivePoint B = F.corners[f.tA][(f.sA + 1) % 3];
    ProjectivePoint C1 = F.corners[f.tA][(f.sA + 2) % 3];
    ProjectivePoint C2 = apply(mBA, F.corners[f.tB][(f.sB + 2) % 3]).normalized();

    DevelopedSystem R;
    R.base = flip(T, a);
    R.corners = F.corners;
    R.gluing = F.gluing;
    R.corners[f.tA] = {C1, A, C2};
    R.corners[f.tB] = {C2, B, C1};
    R.gluing[a] = ProjectiveMap::identity();

    // Gluings of the four outer edges: slots that lived in tB's chart now live
    // in tA's chart.
    auto chart_change = [&](const Incidence& old_slot) -> std::optional<ProjectiveMap> {
        if (old_slot.tri == f.tB) return mBA;
        return std::nullopt;
    };
    const std::array<Incidence, 4> old_slots{{{f.tA, (f.sA + 1) % 3},
                                              {f.tA, (f.sA + 2) % 3},
                                              {f.tB, (f.sB + 1) % 3},
                                              {f.tB, (f.sB + 2) % 3}}};
    std::vector<EdgeId> outer{f.e_BC1, f.e_C1A, f.e_AC2, f.e_C2B};
    std::sort(outer.begin(), outer.end());
    outer.erase(std::unique(outer.begin(), outer.end()), outer.end());
    for (EdgeId e : outer) {
        if (T.edges[e].kind != EdgeKind::Arc) continue;
        ProjectiveMap g = *F.gluing[e];
        // inc order is preserved by flip(); rebase each end onto its new chart.
        for (int i = 0; i < 2; ++i) {
            const Incidence& old_inc = T.edges[e].inc[i];
            bool moved = false;
            for (const auto& slot : old_slots) moved = moved || old_inc == slot;
            if (!moved) continue;
            if (auto chi = chart_change(old_inc)) {
                if (i == 0) g = g * chi->inverse();
                else g = (*chi) * g;
            }
        }
        R.gluing[e] = g;
    }
    return R;
}

void swap_arc_labels(DevelopedSystem& F, EdgeId x, EdgeId y) {
    if (x == y) return;
    std::swap(F.gluing[x], F.gluing[y]);
    std::swap(F.base.edges[x], F.base.edges[y]);
    for (auto& t : F.base.triangles)
        for (auto& s : t.side) {
            if (s == x) s = y;
            else if (s == y) s = x;
        }
}

} // namespace mono
