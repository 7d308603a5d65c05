#pragma once

#include <map>
#include <optional>

#include "mono/cluster.hpp"
#include "mono/integrate.hpp"
#include "mono/parallel.hpp"

namespace mono {

// Subdominant-solution line of a Stokes sector, transported to a base point.
// The WKB seed sits on the sector's central ray, placed where the accumulated
// decay integral |Re int sqrt(phi) dz| reaches cfg.wkb_decay_target.
struct SubdominantLine {
    ProjectivePoint line;   // (y : -y') at the base point
    Complex base{0.0};
    Complex seed{0.0};
    double decay = 0.0;     // accumulated decay at the seed
};

SubdominantLine subdominant(const RationalPotential& phi, const std::vector<PoleRecord>& poles,
                            int pole_index, int sector, Complex base_point,
                            const IntegratorConfig& cfg);

// Eigenline of the numerically computed monodromy around a regular pole whose
// det-1 eigenvalue ratio matches exp(sign * r(p)).
struct RegularFrame {
    ProjectivePoint line;
    Complex base{0.0};
    ProjectiveMap holonomy;   // loop transport based at `base`
    Complex eigenvalue_ratio; // matched / other
};

RegularFrame frame_regular(const RationalPotential& phi, const std::vector<PoleRecord>& poles,
                           int pole_index, int sign, const IntegratorConfig& cfg);

// Planar realization of a triangulation for non-polynomial potentials: every
// marked point is anchored (punctures at pole locations, boundary points on
// Stokes rays at the given radius), every arc realized as a planar path
// between its anchors, and every triangle given a base point such that the
// straight segments from its corners' anchors stay inside the triangle.
struct PlanarRealization {
    IdealTriangulation tri;
    // vertex -> (pole table index, sector index or -1 for punctures)
    struct Anchor {
        int pole = -1;
        int sector = -1;
        double radius = 0.0; // anchor distance from the pole (ignored for punctures)
    };
    std::vector<Anchor> anchors;            // indexed by VertexId
    std::map<EdgeId, PlanarPath> arc_paths; // one per arc
    std::vector<Complex> tri_base;          // one base point per triangle
};

struct BuildResult {
    std::vector<PoleRecord> poles;
    MarkedBorderedSurface surface;
    IdealTriangulation tri;
    DevelopedSystem system;
    Signing signing;             // as applied to the regular poles
    std::vector<int> sector_of_vertex; // boundary vertex -> Stokes sector (-1 at punctures)
};

// Monodromy framed local system of a signed potential. With no realization
// the potential must be polynomial (Auto); the framed system is the fan of
// subdominant lines at base 0 with identity gluings. Otherwise corner lines
// are transported along the realization into per-triangle charts and gluings
// come from transport across shared edges.
BuildResult build_framed(const RationalPotential& phi, const Signing* signing,
                         const PlanarRealization* realization, const IntegratorConfig& cfg,
                         ExecMode exec = default_exec_mode());

// Anchor position of (pole, sector) at the given radius in the z-plane.
Complex sector_anchor(const PoleRecord& pole, int sector, double radius);

struct SweepRow {
    double hbar;
    CoordinateTuple coords;
    std::map<EdgeId, Complex> log_x;       // principal log of each coordinate
    std::map<EdgeId, Complex> hbar_log_x;  // hbar * log X, for slope fits
};

// Coordinates of the monodromy system of phi / hbar^2 across the sweep.
std::vector<SweepRow> wkb_sweep(const RationalPotential& phi, const std::vector<double>& hbars,
                                const IntegratorConfig& cfg, ExecMode exec = default_exec_mode());

} // namespace mono
