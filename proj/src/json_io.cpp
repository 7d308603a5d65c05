#include "mono/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace mono {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) bad(std::string("missing field '") + name + "'");
    return j.at(name);
}

} // namespace

Json to_json(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return Complex{j.get<double>(), 0.0};
    return Complex{field(j, "re").get<double>(), field(j, "im").get<double>()};
}

Json to_json(const MarkedBorderedSurface& s) {
    return Json{{"genus", s.genus}, {"boundary", s.boundary}, {"punctures", s.punctures}};
}

MarkedBorderedSurface surface_from_json(const Json& j) {
    MarkedBorderedSurface s;
    s.genus = field(j, "genus").get<int>();
    s.boundary = field(j, "boundary").get<std::vector<int>>();
    s.punctures = field(j, "punctures").get<int>();
    for (int k : s.boundary)
        if (k < 1) bad("boundary circles need at least one marked point");
    if (s.genus < 0 || s.punctures < 0) bad("negative genus or puncture count");
    return s;
}

Json to_json(const IdealTriangulation& T) {
    Json tris = Json::array(), corners = Json::array(), edges = Json::array(), verts = Json::array();
    for (const auto& t : T.triangles) {
        tris.push_back(Json{t.side[0], t.side[1], t.side[2]});
        corners.push_back(Json{t.corner[0], t.corner[1], t.corner[2]});
    }
    for (EdgeId e = 0; e < (EdgeId)T.edges.size(); ++e)
        edges.push_back(Json{{"kind", T.edges[e].kind == EdgeKind::Arc ? "arc" : "boundary"},
                             {"id", e}});
    for (const auto& v : T.vertices) verts.push_back(Json{{"puncture", v.puncture}});
    return Json{{"surface", to_json(T.surface)},
                {"triangles", tris},
                {"corners", corners},
                {"edges", edges},
                {"vertices", verts}};
}

IdealTriangulation triangulation_from_json(const Json& j) {
    IdealTriangulation T;
    T.surface = surface_from_json(field(j, "surface"));
    const Json& tris = field(j, "triangles");
    const Json& corners = field(j, "corners");
    if (tris.size() != corners.size()) bad("triangles and corners tables differ in length");
    for (size_t i = 0; i < tris.size(); ++i) {
        Triangle t;
        for (int k = 0; k < 3; ++k) {
            t.side[k] = tris[i][k].get<int>();
            t.corner[k] = corners[i][k].get<int>();
        }
        T.triangles.push_back(t);
    }
    for (const Json& e : field(j, "edges")) {
        Edge ed;
        std::string kind = field(e, "kind").get<std::string>();
        if (kind == "arc") ed.kind = EdgeKind::Arc;
        else if (kind == "boundary") ed.kind = EdgeKind::Boundary;
        else bad("edge kind must be 'arc' or 'boundary'");
        T.edges.push_back(ed);
    }
    for (const Json& v : field(j, "vertices")) {
        Vertex vert;
        vert.puncture = field(v, "puncture").get<bool>();
        T.vertices.push_back(vert);
    }
    for (TriId t = 0; t < (TriId)T.triangles.size(); ++t)
        for (int s = 0; s < 3; ++s) {
            EdgeId e = T.triangles[t].side[s];
            if (e < 0 || e >= (EdgeId)T.edges.size()) bad("triangle side out of range");
            T.edges[e].inc.push_back({t, s});
        }
    ValidationReport rep = T.validate();
    if (!rep.ok()) bad("invalid triangulation: " + rep.joined());
    return T;
}

Json to_json(const ProjectivePoint& p) {
    ProjectivePoint n = p.normalized();
    return Json{to_json(n.a), to_json(n.b)};
}

ProjectivePoint point_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) bad("projective point wants [a, b]");
    return ProjectivePoint{complex_from_json(j[0]), complex_from_json(j[1])};
}

Json to_json(const ProjectiveMap& m) {
    ProjectiveMap n = m.det_normalized();
    return Json{Json{to_json(n.m00), to_json(n.m01)}, Json{to_json(n.m10), to_json(n.m11)}};
}

ProjectiveMap map_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || j[0].size() != 2 || j[1].size() != 2)
        bad("projective map wants a 2x2 matrix");
    return ProjectiveMap::from_rows(complex_from_json(j[0][0]), complex_from_json(j[0][1]),
                                    complex_from_json(j[1][0]), complex_from_json(j[1][1]));
}

Json to_json(const DevelopedSystem& F) {
    Json corners = Json::array();
    for (const auto& t : F.corners)
        corners.push_back(Json{to_json(t[0]), to_json(t[1]), to_json(t[2])});
    Json gluings = Json::object();
    for (EdgeId e = 0; e < (EdgeId)F.gluing.size(); ++e)
        if (F.gluing[e]) gluings[std::to_string(e)] = to_json(*F.gluing[e]);
    return Json{{"triangulation", to_json(F.base)}, {"corners", corners}, {"gluings", gluings}};
}

DevelopedSystem system_from_json(const Json& j) {
    DevelopedSystem F;
    F.base = triangulation_from_json(field(j, "triangulation"));
    const Json& corners = field(j, "corners");
    if (corners.size() != F.base.triangles.size()) bad("corner table size mismatch");
    for (const Json& t : corners)
        F.corners.push_back({point_from_json(t[0]), point_from_json(t[1]), point_from_json(t[2])});
    F.gluing.assign(F.base.edges.size(), std::nullopt);
    for (const auto& [key, val] : field(j, "gluings").items()) {
        int e = std::stoi(key);
        if (e < 0 || e >= (int)F.base.edges.size()) bad("gluing key out of range");
        F.gluing[e] = map_from_json(val);
    }
    ValidationReport rep = F.validate();
    if (!rep.ok()) bad("invalid framed system: " + rep.joined());
    return F;
}

Json to_json(const CrossRatio& x) {
    switch (x.kind) {
        case CrossRatio::Kind::Value: return to_json(x.value);
        case CrossRatio::Kind::Zero: return Json("zero");
        case CrossRatio::Kind::Infinite: return Json("inf");
        case CrossRatio::Kind::Indeterminate: return Json("ind");
    }
    return {};
}

CrossRatio cross_ratio_from_json(const Json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "zero") return CrossRatio::zero();
        if (s == "inf") return CrossRatio::infinite();
        if (s == "ind") return CrossRatio::indeterminate();
        bad("unknown coordinate tag '" + s + "'");
    }
    return CrossRatio::of(complex_from_json(j));
}

Json to_json(const CoordinateTuple& X) {
    Json out = Json::object();
    for (const auto& [e, v] : X.values) out[std::to_string(e)] = to_json(v);
    return out;
}

CoordinateTuple tuple_from_json(const Json& j) {
    CoordinateTuple X;
    for (const auto& [key, val] : j.items()) X.values[std::stoi(key)] = cross_ratio_from_json(val);
    return X;
}

std::string tuple_csv(const CoordinateTuple& X) {
    std::string out = "arc_id,re,im\n";
    char buf[128];
    for (const auto& [e, v] : X.values) {
        if (v.kind == CrossRatio::Kind::Value) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", e, v.value.real(), v.value.imag());
        } else {
            const char* tag = v.kind == CrossRatio::Kind::Zero
                                  ? "zero"
                                  : v.kind == CrossRatio::Kind::Infinite ? "inf" : "ind";
            std::snprintf(buf, sizeof buf, "%d,%s,%s\n", e, tag, tag);
        }
        out += buf;
    }
    return out;
}

Json signing_to_json(const Signing& s, const IdealTriangulation& T) {
    Json out = Json::object();
    for (VertexId v = 0; v < (VertexId)T.vertices.size(); ++v)
        if (T.vertices[v].puncture) out[std::to_string(v)] = s.sign[v];
    return out;
}

Signing signing_from_json(const Json& j, const IdealTriangulation& T) {
    Signing s = Signing::trivial(T);
    for (const auto& [key, val] : j.items()) {
        int v = std::stoi(key);
        if (v < 0 || v >= (int)T.vertices.size() || !T.vertices[v].puncture)
            bad("signing key is not a puncture vertex");
        int sign = val.get<int>();
        if (sign != 1 && sign != -1) bad("signing values must be +1 or -1");
        s.sign[v] = sign;
    }
    return s;
}

Json to_json(const TaggedTriangulation& tau) {
    return Json{{"triangulation", to_json(tau.tri)},
                {"signing", signing_to_json(tau.signing, tau.tri)}};
}

TaggedTriangulation tagged_from_json(const Json& j) {
    IdealTriangulation T = triangulation_from_json(field(j, "triangulation"));
    Signing s = signing_from_json(field(j, "signing"), T);
    return TaggedTriangulation::canonical(std::move(T), std::move(s));
}

Json to_json(const ExchangeMatrix& m) { return Json{{"arcs", m.arcs}, {"matrix", m.eps}}; }

ExchangeMatrix exchange_from_json(const Json& j) {
    ExchangeMatrix m;
    m.arcs = field(j, "arcs").get<std::vector<int>>();
    m.eps = field(j, "matrix").get<std::vector<std::vector<int>>>();
    if (m.eps.size() != m.arcs.size()) bad("exchange matrix shape mismatch");
    for (const auto& row : m.eps)
        if (row.size() != m.arcs.size()) bad("exchange matrix shape mismatch");
    return m;
}

Json to_json(const RationalPotential& phi) {
    Json num = Json::array(), den = Json::array();
    for (const auto& c : phi.num.c) num.push_back(to_json(c));
    for (const auto& c : phi.den.c) den.push_back(to_json(c));
    return Json{{"numerator", num}, {"denominator", den}};
}

RationalPotential potential_from_json(const Json& j) {
    std::vector<Complex> num, den;
    for (const Json& c : field(j, "numerator")) num.push_back(complex_from_json(c));
    if (j.contains("denominator"))
        for (const Json& c : j.at("denominator")) den.push_back(complex_from_json(c));
    if (den.empty()) den.push_back(Complex{1.0});
    return RationalPotential::make(Polynomial(std::move(num)), Polynomial(std::move(den)));
}

Json to_json(const PoleRecord& p) {
    Json out{{"order", p.order}};
    if (p.at_infinity) out["location"] = "inf";
    else out["location"] = to_json(p.location);
    out["leading"] = to_json(p.leading);
    if (p.regular()) {
        out["exponent"] = to_json(p.exponent);
        out["residue"] = to_json(p.residue);
    } else {
        out["stokes_angles"] = p.stokes_angles;
        out["anti_stokes_angles"] = p.anti_stokes_angles;
    }
    return out;
}

Json poles_to_json(const std::vector<PoleRecord>& poles) {
    Json out = Json::array();
    for (const auto& p : poles) out.push_back(to_json(p));
    return out;
}

Json to_json(const DegeneracyVerdict& v) {
    Json out{{"kind", degeneracy_kind_name(v.kind)}};
    switch (v.kind) {
        case DegeneracyVerdict::Kind::D1: out["boundary_witness"] = v.boundary_witness; break;
        case DegeneracyVerdict::Kind::D2: {
            out["pair"] = Json{to_json(v.pair[0]), to_json(v.pair[1])};
            Json recs = Json::array();
            for (const auto& r : v.records)
                recs.push_back(Json{{"source", r.from_puncture ? "puncture" : "cycle"},
                                    {"id", r.id},
                                    {"swaps", r.swaps}});
            out["generators"] = recs;
            break;
        }
        case DegeneracyVerdict::Kind::D3: out["common"] = to_json(v.common); break;
        default: break;
    }
    return out;
}

Json to_json(const PlanarPath& p) {
    Json segs = Json::array();
    for (const auto& s : p.segments) {
        if (s.kind == PathSegment::Kind::Line)
            segs.push_back(Json{{"kind", "line"}, {"from", to_json(s.z0)}, {"to", to_json(s.z1)}});
        else
            segs.push_back(Json{{"kind", "arc"},
                                {"center", to_json(s.center)},
                                {"radius", s.radius},
                                {"theta0", s.theta0},
                                {"theta1", s.theta1}});
    }
    return Json{{"segments", segs}};
}

PlanarPath path_from_json(const Json& j) {
    PlanarPath p;
    for (const Json& s : field(j, "segments")) {
        std::string kind = field(s, "kind").get<std::string>();
        if (kind == "line") {
            p.segments.push_back(PathSegment::line(complex_from_json(field(s, "from")),
                                                   complex_from_json(field(s, "to"))));
        } else if (kind == "arc") {
            p.segments.push_back(PathSegment::arc(complex_from_json(field(s, "center")),
                                                  field(s, "radius").get<double>(),
                                                  field(s, "theta0").get<double>(),
                                                  field(s, "theta1").get<double>()));
        } else {
            bad("path segment kind must be 'line' or 'arc'");
        }
    }
    p.check_continuity();
    return p;
}

PlanarRealization realization_from_json(const Json& j) {
    PlanarRealization real;
    real.tri = triangulation_from_json(field(j, "triangulation"));
    for (const Json& a : field(j, "anchors")) {
        PlanarRealization::Anchor anchor;
        anchor.pole = field(a, "pole").get<int>();
        anchor.sector = a.contains("sector") ? a.at("sector").get<int>() : -1;
        anchor.radius = a.contains("radius") ? a.at("radius").get<double>() : 0.0;
        real.anchors.push_back(anchor);
    }
    for (const auto& [key, val] : field(j, "arc_paths").items())
        real.arc_paths[std::stoi(key)] = path_from_json(val);
    for (const Json& b : field(j, "base_points")) real.tri_base.push_back(complex_from_json(b));
    return real;
}

namespace {

// SVG y axis points down; complex coordinates are drawn with y negated.
void svg_ray(std::string& svg, Complex from, double angle, double len, double width, bool dashed) {
    Complex to = from + len * Complex{std::cos(angle), std::sin(angle)};
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<line x1='%.6g' y1='%.6g' x2='%.6g' y2='%.6g' stroke='%s' stroke-width='%.6g'%s/>\n",
                  from.real(), -from.imag(), to.real(), -to.imag(), dashed ? "#888" : "#c33", width,
                  dashed ? " stroke-dasharray='2,2'" : "");
    svg += buf;
}

} // namespace

std::string analyze_svg(const std::vector<PoleRecord>& poles) {
    double extent = 1.0;
    for (const auto& p : poles)
        if (!p.at_infinity) extent = std::max(extent, std::abs(p.location));
    double R = 2.0 * (1.0 + extent);
    double view = 1.25 * R;
    char buf[256];
    std::string svg;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns='http://www.w3.org/2000/svg' viewBox='%.6g %.6g %.6g %.6g'>\n", -view,
                  -view, 2 * view, 2 * view);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<circle cx='0' cy='0' r='%.6g' fill='none' stroke='#ccc' stroke-width='%.6g'/>\n",
                  R, view / 400.0);
    svg += buf;
    double w = view / 300.0;
    for (const auto& p : poles) {
        if (p.at_infinity) {
            // Rays drawn at the frame ring, pointing outward.
            for (size_t k = 0; k < p.stokes_angles.size(); ++k) {
                double a = p.ray_angle_z((int)k);
                svg_ray(svg, 0.9 * R * Complex{std::cos(a), std::sin(a)}, a, 0.2 * R, w, false);
            }
            for (double aw : p.anti_stokes_angles) {
                double a = -aw;
                svg_ray(svg, 0.9 * R * Complex{std::cos(a), std::sin(a)}, a, 0.2 * R, w, true);
            }
            continue;
        }
        std::snprintf(buf, sizeof buf, "<circle cx='%.6g' cy='%.6g' r='%.6g' fill='#223'/>\n",
                      p.location.real(), -p.location.imag(), view / 80.0);
        svg += buf;
        for (double a : p.stokes_angles) svg_ray(svg, p.location, a, 0.22 * R, w, false);
        for (double a : p.anti_stokes_angles) svg_ray(svg, p.location, a, 0.22 * R, w, true);
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace mono
