#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mono/errors.hpp"

namespace mono {

using EdgeId = int;
using TriId = int;
using VertexId = int;

// Genus, marked points per boundary circle, and puncture count. The
// combinatorial invariant of a pole divisor.
struct MarkedBorderedSurface {
    int genus = 0;
    std::vector<int> boundary; // k_i >= 1 per boundary circle
    int punctures = 0;

    int marked_points() const;
    bool closed() const { return boundary.empty(); }
    // n = 6g - 6 + sum_d (k_d + 3), punctures contributing k = 0.
    int rank() const;
    // Moduli-facing operations exclude genus-0 surfaces with < 3 marked points.
    bool degenerate() const { return genus == 0 && marked_points() < 3; }
    std::string signature() const;

    bool operator==(const MarkedBorderedSurface&) const = default;
};

enum class EdgeKind { Arc, Boundary };

struct Incidence {
    TriId tri = -1;
    int side = -1;
    bool operator==(const Incidence&) const = default;
};

// Arcs carry one or two (triangle, side) incidences, boundary segments one.
struct Edge {
    EdgeKind kind = EdgeKind::Arc;
    std::vector<Incidence> inc;
};

// Corners are counterclockwise with respect to the surface orientation;
// side s runs from corner s to corner s+1.
struct Triangle {
    std::array<EdgeId, 3> side{-1, -1, -1};
    std::array<VertexId, 3> corner{-1, -1, -1};
};

struct Vertex {
    bool puncture = false;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    std::string joined() const;
};

struct IdealTriangulation {
    MarkedBorderedSurface surface;
    std::vector<Triangle> triangles;
    std::vector<Edge> edges;
    std::vector<Vertex> vertices;

    int arc_count() const;
    std::vector<EdgeId> arcs() const;
    bool is_arc(EdgeId e) const { return edges[e].kind == EdgeKind::Arc; }

    // True when both incidences of e land on one triangle.
    bool is_self_folded_interior(EdgeId e) const;
    bool is_self_folded(TriId t) const;
    // For the interior edge of a self-folded triangle, the encircling edge;
    // identity otherwise.
    EdgeId pi(EdgeId e) const;
    // Interior arc of the self-folded triangle whose encircling edge is e,
    // if e encircles one.
    std::optional<EdgeId> encircled_interior(EdgeId e) const;

    ValidationReport validate() const;

    int valency(VertexId p) const; // half-edge count at a puncture

    // Walks the corner star of an interior vertex counterclockwise. Each entry
    // is (triangle, corner slot at p); entry i+1 is reached by crossing side
    // (corner+2)%3 of entry i.
    std::vector<Incidence> star(VertexId p) const;
};

// Quadrilateral around a flippable arc a: a's incidences are (tA, sA) and
// (tB, sB); A = tA.corner[sA], B = tA.corner[sA+1], C1 and C2 the far corners.
// After the flip tA holds (C1, A, C2) and tB holds (C2, B, C1), with the new
// arc as side 2 of both.
struct FlipFrame {
    TriId tA, tB;
    int sA, sB;
    EdgeId e_BC1, e_C1A, e_AC2, e_C2B;
    VertexId vA, vB, vC1, vC2;
};

FlipFrame flip_frame(const IdealTriangulation& T, EdgeId a);

// The unique other triangulation sharing all arcs but a; the new arc reuses
// a's index. Throws SelfFoldedInterior when a is the interior edge of a
// self-folded triangle.
IdealTriangulation flip(const IdealTriangulation& T, EdgeId a);

bool same_triangulation(const IdealTriangulation& x, const IdealTriangulation& y);

// n x n skew-symmetric matrix over the arcs of T, pi_T-corrected.
struct ExchangeMatrix {
    std::vector<EdgeId> arcs;           // row/column labels, ascending EdgeId
    std::vector<std::vector<int>> eps;  // eps[i][j]

    int index_of(EdgeId a) const;
    int entry(EdgeId i, EdgeId j) const;
};

ExchangeMatrix exchange_matrix(const IdealTriangulation& T);

// Standard matrix mutation at arc k.
ExchangeMatrix mutate(const ExchangeMatrix& eps, EdgeId k);

// Map punctures (by VertexId) to +-1; non-puncture slots are ignored.
struct Signing {
    std::vector<int> sign; // indexed by VertexId, values in {+1, -1}

    static Signing trivial(const IdealTriangulation& T);
    int at(VertexId p) const { return sign[p]; }
    bool trivial_on(const IdealTriangulation& T) const;
};

// Signed triangulation in canonical form: +1 at every valency-1 puncture.
// Canonicalization swaps the interior/encircling arc labels at each puncture
// whose sign it toggles, implementing the tagged-arc identification.
struct TaggedTriangulation {
    IdealTriangulation tri;
    Signing signing;

    static TaggedTriangulation canonical(IdealTriangulation T, Signing s);
    bool canonical_form() const;
};

// Flip of a tagged arc; total (every tagged arc is flippable).
TaggedTriangulation tagged_flip(const TaggedTriangulation& tau, EdgeId a);

// Seed catalog: polygon (k >= 3), once-punctured polygon (k >= 1),
// annulus (k1, k2 >= 1), once-punctured torus, sphere with >= 4 punctures.
IdealTriangulation default_triangulation(const MarkedBorderedSurface& s);

} // namespace mono
