#pragma once

// JSON forms of surfaces, metrics, psi vectors and arc-complex points.
//
//   surface: { "hexagons": N, "edges": [ [[h, s], [h', s']], ... ] }
//   metric:  { "lengths": [ ... ] }              (surface edge order)
//   psi:     { "h": h, "values": [ ... ] }
//   point:   { "surface": ..., "kept_edges": [ ... ], "weights": [ ... ],
//              "scale": x, "h": h }
//
// Readers also accept a document that wraps the object under a "surface" or
// "metric" key, so command outputs can be fed back in.
//
// Malformed documents raise DomainError; bad gluings raise InvalidGluing.

#include <string>

#include <nlohmann/json.hpp>

#include "teichcells/delaunay.hpp"
#include "teichcells/hypgeom.hpp"
#include "teichcells/metric.hpp"
#include "teichcells/surface.hpp"

namespace teichcells::cli {

using Json = nlohmann::json;

Json to_json(const surface::IdealTriangulation& t);
Json to_json(const metric::Metric& m);
Json to_json(const metric::PsiVector& p);
Json to_json(const delaunay::ArcComplexPoint& p);
Json to_json(const hypgeom::HPoint& p);

surface::IdealTriangulation surface_from_json(const Json& j);
metric::Metric metric_from_json(const Json& j);
delaunay::ArcComplexPoint point_from_json(const Json& j);

Json read_json_file(const std::string& path);

/// A bundled surface name (see bundled::all_surfaces) or a surface file path.
surface::IdealTriangulation load_surface(const std::string& name_or_path);

/// A metric file, or entry `index` of the "metrics" array of a sample file.
metric::Metric load_metric(const std::string& path, int index = 0);

}  // namespace teichcells::cli
