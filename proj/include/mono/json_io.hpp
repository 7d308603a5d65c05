#pragma once

#include <json.hpp>

#include "mono/cluster.hpp"
#include "mono/stokes.hpp"

namespace mono {

using Json = nlohmann::json;

Json to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json to_json(const MarkedBorderedSurface& s);
MarkedBorderedSurface surface_from_json(const Json& j);

Json to_json(const IdealTriangulation& T);
IdealTriangulation triangulation_from_json(const Json& j);

Json to_json(const ProjectivePoint& p);
ProjectivePoint point_from_json(const Json& j);

Json to_json(const ProjectiveMap& m); // det-normalized 2x2 matrix
ProjectiveMap map_from_json(const Json& j);

Json to_json(const DevelopedSystem& F);
DevelopedSystem system_from_json(const Json& j);

Json to_json(const CrossRatio& x); // {re, im} | "zero" | "inf" | "ind"
CrossRatio cross_ratio_from_json(const Json& j);

Json to_json(const CoordinateTuple& X);
CoordinateTuple tuple_from_json(const Json& j);
std::string tuple_csv(const CoordinateTuple& X); // columns arc_id, re, im

Json signing_to_json(const Signing& s, const IdealTriangulation& T);
Signing signing_from_json(const Json& j, const IdealTriangulation& T);

Json to_json(const TaggedTriangulation& tau);
TaggedTriangulation tagged_from_json(const Json& j);

Json to_json(const ExchangeMatrix& m);
ExchangeMatrix exchange_from_json(const Json& j);

Json to_json(const RationalPotential& phi);
RationalPotential potential_from_json(const Json& j);

Json to_json(const PoleRecord& p);
Json poles_to_json(const std::vector<PoleRecord>& poles);

Json to_json(const DegeneracyVerdict& v);

Json to_json(const PlanarPath& p);
PlanarPath path_from_json(const Json& j);

PlanarRealization realization_from_json(const Json& j);

// Pole positions with Stokes (solid) and anti-Stokes (dashed) rays.
std::string analyze_svg(const std::vector<PoleRecord>& poles);

} // namespace mono
