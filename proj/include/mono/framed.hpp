#pragma once

#include <optional>
#include <vector>

#include "mono/projective.hpp"
#include "mono/surface.hpp"

namespace mono {

// Finite presentation of a framed PGL_2 local system relative to a
// triangulation: each triangle carries its three developed framing lines in
// its own chart, and each interior arc a Moebius map between the adjacent
// charts. Gluings are oriented from the chart of inc[0] to the chart of
// inc[1].
struct DevelopedSystem {
    IdealTriangulation base;
    std::vector<std::array<ProjectivePoint, 3>> corners;
    std::vector<std::optional<ProjectiveMap>> gluing; // indexed by EdgeId

    const ProjectivePoint& corner(TriId t, int c) const { return corners[t][c % 3]; }

    // Map from the chart of base.edges[e].inc[from] to the other chart.
    ProjectiveMap transition(EdgeId e, int from) const;

    ValidationReport validate() const;
};

// Per-triangle development along a dual spanning tree rooted at triangle 0:
// chart_to_global[t] maps triangle t's chart into the root chart, and each
// non-tree interior arc contributes a deck transformation of the root chart.
struct Development {
    std::vector<ProjectiveMap> chart_to_global;
    std::vector<EdgeId> tree;     // arcs used by the spanning tree
    std::vector<EdgeId> cycles;   // remaining interior arcs

    ProjectivePoint developed_corner(const DevelopedSystem& F, TriId t, int c) const;
};

Development develop(const DevelopedSystem& F);

// Deck transformation of the root chart attached to a non-tree arc.
ProjectiveMap cycle_generator(const DevelopedSystem& F, const Development& dev, EdgeId e);

// Ordered product of gluing maps counterclockwise around the star of p,
// expressed in the chart of the first star triangle. Fixes the corner point
// at p there.
ProjectiveMap puncture_holonomy(const DevelopedSystem& F, VertexId p);

struct D2GeneratorRecord {
    bool from_puncture = false;
    int id = -1;    // EdgeId of a cycle arc, or VertexId of a puncture
    bool swaps = false;
};

struct DegeneracyVerdict {
    enum class Kind { None, D1, D2, D3 };
    Kind kind = Kind::None;
    EdgeId boundary_witness = -1;                 // D1
    std::array<ProjectivePoint, 2> pair{};        // D2
    std::vector<D2GeneratorRecord> records;       // D2
    ProjectivePoint common{};                     // D3

    bool none() const { return kind == Kind::None; }
};

const char* degeneracy_kind_name(DegeneracyVerdict::Kind k);

// First applicable of (D1), (D2), (D3), else None. (D3) applies to closed
// surfaces only.
DegeneracyVerdict degeneracy(const DevelopedSystem& F);

// g . (rho, psi) = (g rho g^{-1}, g psi); coordinates and the degeneracy
// verdict are unchanged.
DevelopedSystem conjugate(const DevelopedSystem& F, const ProjectiveMap& g);

// Replaces the framing at puncture p by the other eigenline of its holonomy,
// transported consistently around its star. Requires semisimple holonomy.
DevelopedSystem sign_flip(const DevelopedSystem& F, VertexId p);

// Re-expresses F on flip(base, a): developed corner data recomputed across
// the changed quadrilateral, gluings rebased onto the surviving chart.
DevelopedSystem flip_framed(const DevelopedSystem& F, EdgeId a);

// Swap arc labels x and y in the base and the gluing table.
void swap_arc_labels(DevelopedSystem& F, EdgeId x, EdgeId y);

} // namespace mono
