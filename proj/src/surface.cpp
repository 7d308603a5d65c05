#include "mono/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace mono {

int MarkedBorderedSurface::marked_points() const {
    return punctures + std::accumulate(boundary.begin(), boundary.end(), 0);
}

int MarkedBorderedSurface::rank() const {
    int n = 6 * genus - 6;
    for (int k : boundary) n += k + 3;
    n += 3 * punctures;
    return n;
}

std::string MarkedBorderedSurface::signature() const {
    std::ostringstream os;
    os << "genus " << genus << ", boundary (";
    for (size_t i = 0; i < boundary.size(); ++i) os << (i ? "," : "") << boundary[i];
    os << "), " << punctures << " punctures";
    return os.str();
}

std::string ValidationReport::joined() const {
    std::string s;
    for (const auto& v : violations) {
        if (!s.empty()) s += "; ";
        s += v;
    }
    return s;
}

int IdealTriangulation::arc_count() const {
    int n = 0;
    for (const auto& e : edges) n += e.kind == EdgeKind::Arc;
    return n;
}

std::vector<EdgeId> IdealTriangulation::arcs() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < (EdgeId)edges.size(); ++e)
        if (edges[e].kind == EdgeKind::Arc) out.push_back(e);
    return out;
}

bool IdealTriangulation::is_self_folded_interior(EdgeId e) const {
    const Edge& ed = edges[e];
    return ed.kind == EdgeKind::Arc && ed.inc.size() == 2 && ed.inc[0].tri == ed.inc[1].tri;
}

bool IdealTriangulation::is_self_folded(TriId t) const {
    const auto& s = triangles[t].side;
    return s[0] == s[1] || s[1] == s[2] || s[2] == s[0];
}

EdgeId IdealTriangulation::pi(EdgeId e) const {
    if (!is_self_folded_interior(e)) return e;
    const auto& s = triangles[edges[e].inc[0].tri].side;
    for (int i = 0; i < 3; ++i)
        if (s[i] != e) return s[i];
    fail(ErrorKind::InvalidInput, "self-folded triangle with a single edge");
}

std::optional<EdgeId> IdealTriangulation::encircled_interior(EdgeId e) const {
    for (const Incidence& in : edges[e].inc) {
        const auto& s = triangles[in.tri].side;
        for (int i = 0; i < 3; ++i)
            if (s[i] != e && s[i] == s[(i + 1) % 3] && is_self_folded_interior(s[i])) return s[i];
    }
    return std::nullopt;
}

int IdealTriangulation::valency(VertexId p) const {
    if (p < 0 || p >= (VertexId)vertices.size() || !vertices[p].puncture)
        fail(ErrorKind::NotAPuncture, "valency requested at a non-puncture vertex");
    int count = 0;
    for (const auto& t : triangles)
        for (int c = 0; c < 3; ++c) count += t.corner[c] == p;
    return count;
}

std::vector<Incidence> IdealTriangulation::star(VertexId p) const {
    if (p < 0 || p >= (VertexId)vertices.size() || !vertices[p].puncture)
        fail(ErrorKind::NotAPuncture, "star requested at a non-puncture vertex");
    Incidence start{-1, -1};
    for (TriId t = 0; t < (TriId)triangles.size() && start.tri < 0; ++t)
        for (int c = 0; c < 3 && start.tri < 0; ++c)
            if (triangles[t].corner[c] == p) start = {t, c};
    if (start.tri < 0) fail(ErrorKind::InvalidInput, "puncture with no incident corner");
    std::vector<Incidence> walk;
    Incidence cur = start;
    size_t guard = 3 * triangles.size() + 3;
    do {
        walk.push_back(cur);
        EdgeId e = triangles[cur.tri].side[(cur.side + 2) % 3];
        const Edge& ed = edges[e];
        if (ed.inc.size() != 2)
            fail(ErrorKind::InvalidInput, "puncture star reaches the boundary");
        Incidence crossed{cur.tri, (cur.side + 2) % 3};
        Incidence other = ed.inc[0] == crossed ? ed.inc[1] : ed.inc[0];
        cur = {other.tri, other.side};
        if (walk.size() > guard) fail(ErrorKind::InvalidInput, "puncture star does not close");
    } while (!(cur == start));
    return walk;
}

ValidationReport IdealTriangulation::validate() const {
    ValidationReport rep;
    auto bad = [&](const std::string& s) { rep.violations.push_back(s); };

    int n = surface.rank();
    int arcs_found = arc_count();
    if (n >= 0 && arcs_found != n)
        bad("arc count " + std::to_string(arcs_found) + " != rank " + std::to_string(n));
    if (n < 0) bad("surface has negative rank, no ideal triangulation exists");

    int segs = (int)edges.size() - arcs_found;
    int expected_segs = std::accumulate(surface.boundary.begin(), surface.boundary.end(), 0);
    if (segs != expected_segs)
        bad("boundary segment count " + std::to_string(segs) + " != " + std::to_string(expected_segs));
    if ((2 * arcs_found + segs) % 3 != 0 || (int)triangles.size() != (2 * arcs_found + segs) / 3)
        bad("Euler count: #triangles != (2#arcs + #segments)/3");

    // Side slots and incidences must match one-to-one.
    std::map<std::pair<TriId, int>, EdgeId> slot_owner;
    for (EdgeId e = 0; e < (EdgeId)edges.size(); ++e) {
        const Edge& ed = edges[e];
        size_t want = ed.kind == EdgeKind::Arc ? 2 : 1;
        if (ed.inc.size() != want)
            bad("edge " + std::to_string(e) + " has " + std::to_string(ed.inc.size()) + " incidences");
        for (const Incidence& in : ed.inc) {
            if (in.tri < 0 || in.tri >= (TriId)triangles.size() || in.side < 0 || in.side > 2) {
                bad("edge " + std::to_string(e) + " has a dangling incidence");
                continue;
            }
            if (triangles[in.tri].side[in.side] != e)
                bad("edge " + std::to_string(e) + " incidence does not own its side slot");
            if (!slot_owner.emplace(std::make_pair(in.tri, in.side), e).second)
                bad("side slot registered twice");
        }
    }
    for (TriId t = 0; t < (TriId)triangles.size(); ++t)
        for (int s = 0; s < 3; ++s) {
            EdgeId e = triangles[t].side[s];
            if (e < 0 || e >= (EdgeId)edges.size()) { bad("triangle side out of range"); continue; }
            auto it = slot_owner.find({t, s});
            if (it == slot_owner.end() || it->second != e)
                bad("triangle " + std::to_string(t) + " side " + std::to_string(s) +
                    " not registered with its edge");
        }

    // Corner labels must agree across each interior arc (orientation-reversing).
    for (EdgeId e = 0; e < (EdgeId)edges.size(); ++e) {
        const Edge& ed = edges[e];
        if (ed.kind != EdgeKind::Arc || ed.inc.size() != 2) continue;
        auto [tA, sA] = ed.inc[0];
        auto [tB, sB] = ed.inc[1];
        if (tA < 0 || tB < 0) continue;
        if (triangles[tA].corner[sA] != triangles[tB].corner[(sB + 1) % 3] ||
            triangles[tA].corner[(sA + 1) % 3] != triangles[tB].corner[sB])
            bad("arc " + std::to_string(e) + " endpoint labels disagree across the gluing");
    }

    std::vector<int> corner_count(vertices.size(), 0);
    for (const auto& t : triangles)
        for (int c = 0; c < 3; ++c) {
            if (t.corner[c] < 0 || t.corner[c] >= (VertexId)vertices.size()) {
                bad("corner vertex out of range");
                continue;
            }
            ++corner_count[t.corner[c]];
        }
    for (VertexId v = 0; v < (VertexId)vertices.size(); ++v)
        if (corner_count[v] == 0) bad("vertex " + std::to_string(v) + " has no incident corner");

    int punct = 0;
    for (const auto& v : vertices) punct += v.puncture;
    if (punct != surface.punctures) bad("puncture count disagrees with the surface");
    if ((int)vertices.size() != surface.marked_points()) bad("vertex count != marked points");

    return rep;
}

FlipFrame flip_frame(const IdealTriangulation& T, EdgeId a) {
    if (a < 0 || a >= (EdgeId)T.edges.size() || T.edges[a].kind != EdgeKind::Arc)
        fail(ErrorKind::InvalidInput, "flip target is not an arc");
    if (T.is_self_folded_interior(a))
        fail(ErrorKind::SelfFoldedInterior, "cannot flip the interior edge of a self-folded triangle");
    const Edge& ed = T.edges[a];
    FlipFrame f;
    f.tA = ed.inc[0].tri; f.sA = ed.inc[0].side;
    f.tB = ed.inc[1].tri; f.sB = ed.inc[1].side;
    const Triangle& ta = T.triangles[f.tA];
    const Triangle& tb = T.triangles[f.tB];
    f.vA = ta.corner[f.sA];
    f.vB = ta.corner[(f.sA + 1) % 3];
    f.vC1 = ta.corner[(f.sA + 2) % 3];
    f.vC2 = tb.corner[(f.sB + 2) % 3];
    f.e_BC1 = ta.side[(f.sA + 1) % 3];
    f.e_C1A = ta.side[(f.sA + 2) % 3];
    f.e_AC2 = tb.side[(f.sB + 1) % 3];
    f.e_C2B = tb.side[(f.sB + 2) % 3];
    return f;
}

namespace {

// Rotation-normalized (side, corner) cycle; triangle slot numbering is
// internal bookkeeping, edge and vertex labels are the semantic content.
std::array<std::pair<EdgeId, VertexId>, 3> triangle_key(const Triangle& t) {
    std::array<std::pair<EdgeId, VertexId>, 3> best{};
    for (int r = 0; r < 3; ++r) {
        std::array<std::pair<EdgeId, VertexId>, 3> cand;
        for (int i = 0; i < 3; ++i)
            cand[i] = {t.side[(r + i) % 3], t.corner[(r + i) % 3]};
        if (r == 0 || cand < best) best = cand;
    }
    return best;
}

} // namespace

bool same_triangulation(const IdealTriangulation& x, const IdealTriangulation& y) {
    if (!(x.surface == y.surface) || x.triangles.size() != y.triangles.size() ||
        x.edges.size() != y.edges.size() || x.vertices.size() != y.vertices.size())
        return false;
    for (size_t e = 0; e < x.edges.size(); ++e)
        if (x.edges[e].kind != y.edges[e].kind) return false;
    for (size_t v = 0; v < x.vertices.size(); ++v)
        if (x.vertices[v].puncture != y.vertices[v].puncture) return false;
    std::vector<std::array<std::pair<EdgeId, VertexId>, 3>> kx, ky;
    for (const auto& t : x.triangles) kx.push_back(triangle_key(t));
    for (const auto& t : y.triangles) ky.push_back(triangle_key(t));
    std::sort(kx.begin(), kx.end());
    std::sort(ky.begin(), ky.end());
    return kx == ky;
}

IdealTriangulation flip(const IdealTriangulation& T, EdgeId a) {
    FlipFrame f = flip_frame(T, a);
    IdealTriangulation R = T;

    R.triangles[f.tA] = Triangle{{f.e_C1A, f.e_AC2, a}, {f.vC1, f.vA, f.vC2}};
    R.triangles[f.tB] = Triangle{{f.e_C2B, f.e_BC1, a}, {f.vC2, f.vB, f.vC1}};

    R.edges[a].inc = {{f.tA, 2}, {f.tB, 2}};

    const std::array<std::pair<Incidence, Incidence>, 4> rewrites{{
        {{f.tA, (f.sA + 1) % 3}, {f.tB, 1}}, // e_BC1
        {{f.tA, (f.sA + 2) % 3}, {f.tA, 0}}, // e_C1A
        {{f.tB, (f.sB + 1) % 3}, {f.tA, 1}}, // e_AC2
        {{f.tB, (f.sB + 2) % 3}, {f.tB, 0}}, // e_C2B
    }};
    std::vector<EdgeId> outer{f.e_BC1, f.e_C1A, f.e_AC2, f.e_C2B};
    std::sort(outer.begin(), outer.end());
    outer.erase(std::unique(outer.begin(), outer.end()), outer.end());
    for (EdgeId e : outer)
        for (Incidence& in : R.edges[e].inc)
            for (const auto& [from, to] : rewrites)
                if (in == from) { in = to; break; }
    return R;
}

int ExchangeMatrix::index_of(EdgeId a) const {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), a);
    if (it == arcs.end() || *it != a) fail(ErrorKind::InvalidInput, "edge is not an arc of this matrix");
    return (int)(it - arcs.begin());
}

int ExchangeMatrix::entry(EdgeId i, EdgeId j) const { return eps[index_of(i)][index_of(j)]; }

ExchangeMatrix exchange_matrix(const IdealTriangulation& T) {
    ExchangeMatrix M;
    M.arcs = T.arcs();
    int n = (int)M.arcs.size();
    M.eps.assign(n, std::vector<int>(n, 0));
    // pi^{-1}: arcs sitting at each edge.
    std::vector<std::vector<int>> at_edge(T.edges.size());
    for (int i = 0; i < n; ++i) at_edge[T.pi(M.arcs[i])].push_back(i);
    for (TriId t = 0; t < (TriId)T.triangles.size(); ++t) {
        if (T.is_self_folded(t)) continue;
        for (int s = 0; s < 3; ++s) {
            EdgeId ei = T.triangles[t].side[s];
            EdgeId ej = T.triangles[t].side[(s + 1) % 3];
            for (int x : at_edge[ei])
                for (int y : at_edge[ej]) {
                    M.eps[x][y] += 1;
                    M.eps[y][x] -= 1;
                }
        }
    }
    return M;
}

ExchangeMatrix mutate(const ExchangeMatrix& eps, EdgeId k) {
    ExchangeMatrix M = eps;
    int kk = eps.index_of(k);
    int n = (int)eps.arcs.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == kk || j == kk) {
                M.eps[i][j] = -eps.eps[i][j];
            } else {
                int ik = eps.eps[i][kk], kj = eps.eps[kk][j];
                int sgn = (ik > 0) - (ik < 0);
                M.eps[i][j] = eps.eps[i][j] + sgn * std::max(0, ik * kj);
            }
        }
    return M;
}

Signing Signing::trivial(const IdealTriangulation& T) {
    Signing s;
    s.sign.assign(T.vertices.size(), 1);
    return s;
}

bool Signing::trivial_on(const IdealTriangulation& T) const {
    for (VertexId v = 0; v < (VertexId)T.vertices.size(); ++v)
        if (T.vertices[v].puncture && sign[v] != 1) return false;
    return true;
}

namespace {

// Swap the labels of two edges: exchange records and remap side references.
void swap_edge_labels(IdealTriangulation& T, EdgeId x, EdgeId y) {
    if (x == y) return;
    std::swap(T.edges[x], T.edges[y]);
    for (auto& t : T.triangles)
        for (auto& s : t.side) {
            if (s == x) s = y;
            else if (s == y) s = x;
        }
}

// Puncture enclosed by the self-folded triangle whose interior edge is a.
VertexId enclosed_puncture(const IdealTriangulation& T, EdgeId a) {
    auto [t1, s1] = T.edges[a].inc[0];
    auto [t2, s2] = T.edges[a].inc[1];
    int shared = (s2 == (s1 + 1) % 3) ? s2 : s1;
    return T.triangles[t1].corner[shared];
}

} // namespace

TaggedTriangulation TaggedTriangulation::canonical(IdealTriangulation T, Signing s) {
    if ((int)s.sign.size() != (int)T.vertices.size())
        fail(ErrorKind::InvalidInput, "signing size does not match the vertex table");
    for (VertexId p = 0; p < (VertexId)T.vertices.size(); ++p) {
        if (!T.vertices[p].puncture || s.sign[p] != -1) continue;
        if (T.valency(p) != 1) continue;
        // Toggling at a valency-1 puncture exchanges the roles of the interior
        // and encircling edges; in the once-punctured monogon the encircling
        // edge is a boundary segment and the identification is vacuous.
        Incidence c = T.star(p)[0];
        EdgeId interior = T.triangles[c.tri].side[c.side];
        EdgeId loop = T.pi(interior);
        s.sign[p] = 1;
        if (T.edges[loop].kind == EdgeKind::Arc) swap_edge_labels(T, interior, loop);
    }
    return {std::move(T), std::move(s)};
}

bool TaggedTriangulation::canonical_form() const {
    for (VertexId p = 0; p < (VertexId)tri.vertices.size(); ++p)
        if (tri.vertices[p].puncture && signing.sign[p] == -1 && tri.valency(p) == 1) return false;
    return true;
}

TaggedTriangulation tagged_flip(const TaggedTriangulation& tau, EdgeId a) {
    IdealTriangulation T = tau.tri;
    Signing s = tau.signing;
    if (T.is_self_folded_interior(a)) {
        EdgeId loop = T.pi(a);
        if (T.edges[loop].kind == EdgeKind::Boundary) return tau; // once-punctured monogon
        VertexId p = enclosed_puncture(T, a);
        s.sign[p] = -s.sign[p];
        swap_edge_labels(T, a, loop);
    }
    return TaggedTriangulation::canonical(flip(T, a), std::move(s));
}

namespace {

// Registers incidences by scanning triangle side slots in order.
IdealTriangulation assemble(MarkedBorderedSurface s, std::vector<Triangle> tris,
                            std::vector<EdgeKind> kinds, std::vector<Vertex> verts) {
    IdealTriangulation T;
    T.surface = std::move(s);
    T.triangles = std::move(tris);
    T.vertices = std::move(verts);
    T.edges.resize(kinds.size());
    for (size_t e = 0; e < kinds.size(); ++e) T.edges[e].kind = kinds[e];
    for (TriId t = 0; t < (TriId)T.triangles.size(); ++t)
        for (int sd = 0; sd < 3; ++sd) T.edges[T.triangles[t].side[sd]].inc.push_back({t, sd});
    ValidationReport rep = T.validate();
    if (!rep.ok()) fail(ErrorKind::InvalidInput, "catalog construction invalid: " + rep.joined());
    return T;
}

IdealTriangulation polygon(int k) {
    // Fan from vertex 0; arcs (0, j) for j = 2..k-2 get ids j-2.
    int n = k - 3;
    auto arc_id = [&](int j) { return j - 2; };
    auto seg_id = [&](int i) { return n + i; }; // segment (i, i+1 mod k)
    std::vector<Triangle> tris;
    for (int i = 1; i <= k - 2; ++i) {
        EdgeId s0 = (i == 1) ? seg_id(0) : arc_id(i);
        EdgeId s1 = seg_id(i);
        EdgeId s2 = (i + 1 == k - 1) ? seg_id(k - 1) : arc_id(i + 1);
        tris.push_back({{s0, s1, s2}, {0, i, i + 1}});
    }
    std::vector<EdgeKind> kinds(n, EdgeKind::Arc);
    kinds.insert(kinds.end(), k, EdgeKind::Boundary);
    return assemble({0, {k}, 0}, tris, kinds, std::vector<Vertex>(k));
}

IdealTriangulation punctured_polygon(int k) {
    // Fan from the puncture P = vertex k; arc i joins P to boundary vertex i.
    VertexId P = k;
    auto seg_id = [&](int i) { return k + i; };
    std::vector<Triangle> tris;
    for (int i = 0; i < k; ++i) {
        int j = (i + 1) % k;
        tris.push_back({{seg_id(i), j, i}, {i, j, P}});
    }
    std::vector<EdgeKind> kinds(k, EdgeKind::Arc);
    kinds.insert(kinds.end(), k, EdgeKind::Boundary);
    std::vector<Vertex> verts(k + 1);
    verts[P].puncture = true;
    return assemble({0, {k}, 1}, tris, kinds, verts);
}

IdealTriangulation annulus(int k1, int k2) {
    // Cut along an arc joining outer vertex O0 and inner vertex I0, then fan
    // the resulting disc from the first copy of O0.
    int L = k1 + k2 + 2;
    int n = k1 + k2;
    EdgeId cut = 0;                                  // the cut arc
    auto fan_id = [&](int pos) { return pos - 1; };  // disc arc (0, pos), pos = 2..L-2
    EdgeId outer0 = n, inner0 = n + k1;
    std::vector<VertexId> vert_at(L);
    vert_at[0] = 0;
    for (int i = 1; i < k1; ++i) vert_at[i] = i;
    vert_at[k1] = 0;
    vert_at[k1 + 1] = k1;
    for (int j = 1; j < k2; ++j) vert_at[k1 + 1 + j] = k1 + (k2 - j);
    vert_at[L - 1] = k1;
    auto ring_edge = [&](int pos) -> EdgeId { // disc boundary edge (pos, pos+1 mod L)
        if (pos < k1) return outer0 + pos;
        if (pos == k1) return cut;
        if (pos < L - 1) return inner0 + (pos - k1 - 1);
        return cut;
    };
    std::vector<Triangle> tris;
    for (int i = 1; i <= L - 2; ++i) {
        EdgeId s0 = (i == 1) ? ring_edge(0) : fan_id(i);
        EdgeId s1 = ring_edge(i);
        EdgeId s2 = (i + 1 == L - 1) ? ring_edge(L - 1) : fan_id(i + 1);
        tris.push_back({{s0, s1, s2}, {vert_at[0], vert_at[i], vert_at[i + 1]}});
    }
    std::vector<EdgeKind> kinds(n, EdgeKind::Arc);
    kinds.insert(kinds.end(), k1 + k2, EdgeKind::Boundary);
    return assemble({0, {k1, k2}, 0}, tris, kinds, std::vector<Vertex>(k1 + k2));
}

IdealTriangulation punctured_torus() {
    std::vector<Triangle> tris{{{0, 1, 2}, {0, 0, 0}}, {{0, 1, 2}, {0, 0, 0}}};
    std::vector<Vertex> verts(1);
    verts[0].puncture = true;
    return assemble({1, {}, 1}, tris, {EdgeKind::Arc, EdgeKind::Arc, EdgeKind::Arc}, verts);
}

IdealTriangulation punctured_sphere(int p) {
    // Bipyramid: north 0, south 1, equator 2..p-1.
    int q = p - 2;
    auto E = [&](int j) { return 2 + (j % q); };
    auto eq = [&](int j) { return j % q; };
    auto up = [&](int j) { return q + (j % q); };
    auto down = [&](int j) { return 2 * q + (j % q); };
    std::vector<Triangle> tris;
    for (int j = 0; j < q; ++j) tris.push_back({{eq(j), up(j + 1), up(j)}, {E(j), E(j + 1), 0}});
    for (int j = 0; j < q; ++j) tris.push_back({{eq(j), down(j), down(j + 1)}, {E(j + 1), E(j), 1}});
    std::vector<Vertex> verts(p);
    for (auto& v : verts) v.puncture = true;
    return assemble({0, {}, p}, tris, std::vector<EdgeKind>(3 * q, EdgeKind::Arc), verts);
}

} // namespace

IdealTriangulation default_triangulation(const MarkedBorderedSurface& s) {
    std::vector<int> ks = s.boundary;
    std::sort(ks.rbegin(), ks.rend());
    if (s.genus == 0 && s.punctures == 0 && ks.size() == 1 && ks[0] >= 3) return polygon(ks[0]);
    if (s.genus == 0 && s.punctures == 1 && ks.size() == 1 && ks[0] >= 1)
        return punctured_polygon(ks[0]);
    if (s.genus == 0 && s.punctures == 0 && ks.size() == 2 && ks[1] >= 1) return annulus(ks[0], ks[1]);
    if (s.genus == 1 && s.punctures == 1 && ks.empty()) return punctured_torus();
    if (s.genus == 0 && ks.empty() && s.punctures >= 4) return punctured_sphere(s.punctures);
    fail(ErrorKind::UnsupportedSurface, "no catalog triangulation for " + s.signature());
}

} // namespace mono
