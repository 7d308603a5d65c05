#pragma once

#include <map>

#include "mono/framed.hpp"

namespace mono {

// Map from arcs to cross-ratio values; Zero/Infinite/Indeterminate are
// in-band results of degenerate configurations.
struct CoordinateTuple {
    std::map<EdgeId, CrossRatio> values;

    bool regular_nonzero() const;
    CrossRatio at(EdgeId e) const;
};

// Raw cross ratio of the quadrilateral around an interior edge, before the
// self-folded product rule. Defined for arcs and for the encircling edge use.
CrossRatio edge_cross_ratio(const DevelopedSystem& F, EdgeId e);

// Fock-Goncharov coordinates of F with respect to its base triangulation;
// X_j = Y_j Y_k at self-folded interior edges.
CoordinateTuple coordinates(const DevelopedSystem& F, const IdealTriangulation& T);

// Inverse construction: base triangle at (inf, -1, 0), the dual spanning tree
// developed through the cross-ratio equation, remaining gluings from
// map_from_triples. Requires every value finite nonzero.
DevelopedSystem reconstruct(const IdealTriangulation& T, const CoordinateTuple& X);

// Coordinates after applying the sign flips prescribed by the signing.
CoordinateTuple signed_coordinates(const DevelopedSystem& F, const TaggedTriangulation& tau);

// X_k -> 1/X_k; X_j -> X_j (1 + X_k^{-sgn(eps_jk)})^{-eps_jk}. Pair with
// mutate(ExchangeMatrix) for iterated use.
CoordinateTuple mutate(const CoordinateTuple& X, const ExchangeMatrix& eps, EdgeId k);

// Compares mutate(coordinates(F), eps, k) against direct recomputation on the
// flipped system; returns the maximum relative deviation over arcs.
double flip_consistency(const DevelopedSystem& F, const IdealTriangulation& T, EdgeId k);

enum class EdgeClass { Good, Bad };

// Bad iff the two endpoint framing lines agree under parallel transport along
// the edge (compared inside one adjacent chart).
EdgeClass edge_class(const DevelopedSystem& F, EdgeId e);

struct GoodSearchResult {
    TaggedTriangulation tagged;
    CoordinateTuple coords;
    DevelopedSystem system; // re-expressed on tagged.tri with signing applied
    int moves = 0;
};

// Greedy search for a tagged triangulation with all coordinates regular and
// nonzero: strict-improvement single flips, depth-2 pentagon moves, and a
// sign-flip fallback when every edge is bad. Budget 20 n^2 moves unless
// overridden.
GoodSearchResult find_good(const DevelopedSystem& F, const IdealTriangulation& T0,
                           long budget_override = -1);

} // namespace mono
