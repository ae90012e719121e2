#include "teichcells/cli/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "teichcells/bundled.hpp"
#include "teichcells/errors.hpp"

namespace teichcells::cli {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double real(const Json& j, const char* what) {
  if (!j.is_number()) throw DomainError(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw DomainError(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<double> reals(const Json& j, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(real(v, what));
  return out;
}

surface::Incidence incidence(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw DomainError("edge side must be a [hexagon, slot] pair");
  }
  return {integer(j[0], "hexagon index"), integer(j[1], "slot index")};
}

}  // namespace

Json to_json(const surface::IdealTriangulation& t) {
  Json edges = Json::array();
  for (const auto& e : t.edges()) {
    edges.push_back({{e.sides[0].hexagon, e.sides[0].slot}, {e.sides[1].hexagon, e.sides[1].slot}});
  }
  return {{"hexagons", t.hexagon_count()}, {"edges", edges}};
}

Json to_json(const metric::Metric& m) { return {{"lengths", m.lengths}}; }

Json to_json(const metric::PsiVector& p) { return {{"h", p.h}, {"values", p.values}}; }

Json to_json(const delaunay::ArcComplexPoint& p) {
  return {{"surface", to_json(p.decomposition.base())},
          {"kept_edges", p.decomposition.kept_edges()},
          {"weights", p.weights},
          {"scale", p.scale},
          {"h", p.h}};
}

Json to_json(const hypgeom::HPoint& p) {
  return Json::array({p.coords.x(), p.coords.y(), p.coords.z()});
}

surface::IdealTriangulation surface_from_json(const Json& j) {
  if (j.is_object() && j.contains("surface") && !j.contains("hexagons")) {
    return surface_from_json(j.at("surface"));
  }
  const int hexagons = integer(field(j, "hexagons"), "hexagons");
  const Json& list = field(j, "edges");
  if (!list.is_array()) throw DomainError("edges must be an array");
  std::vector<surface::Edge> edges;
  for (const auto& e : list) {
    if (!e.is_array() || e.size() != 2) throw DomainError("edge must be a pair of sides");
    edges.push_back({{incidence(e[0]), incidence(e[1])}});
  }
  return surface::build_triangulation(hexagons, std::move(edges));
}

metric::Metric metric_from_json(const Json& j) {
  if (j.is_object() && j.contains("metric") && !j.contains("lengths")) {
    return metric_from_json(j.at("metric"));
  }
  return {reals(field(j, "lengths"), "lengths")};
}

delaunay::ArcComplexPoint point_from_json(const Json& j) {
  auto t = surface_from_json(field(j, "surface"));
  const Json& kept_json = field(j, "kept_edges");
  if (!kept_json.is_array()) throw DomainError("kept_edges must be an array");
  std::vector<int> kept;
  for (const auto& e : kept_json) kept.push_back(integer(e, "kept edge"));
  const auto weights = reals(field(j, "weights"), "weights");
  if (weights.size() != kept.size()) throw DomainError("kept_edges and weights differ in length");

  std::set<int> kept_set;
  for (int e : kept) {
    if (e < 0 || e >= t.edge_count()) throw DomainError("kept edge index out of range");
    if (!kept_set.insert(e).second) throw DomainError("kept edge listed twice");
  }
  std::vector<int> deleted;
  for (int e = 0; e < t.edge_count(); ++e) {
    if (!kept_set.count(e)) deleted.push_back(e);
  }

  std::vector<std::pair<int, double>> order;
  for (std::size_t i = 0; i < kept.size(); ++i) order.emplace_back(kept[i], weights[i]);
  std::sort(order.begin(), order.end());

  delaunay::ArcComplexPoint p{surface::delete_edges(t, std::move(deleted)), {},
                              real(field(j, "scale"), "scale"), real(field(j, "h"), "h")};
  for (const auto& [e, w] : order) p.weights.push_back(w);
  delaunay::validate(p);
  return p;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw DomainError("'" + path + "' is not valid JSON: " + err.what());
  }
}

surface::IdealTriangulation load_surface(const std::string& name_or_path) {
  for (auto& s : bundled::all_surfaces()) {
    if (s.name == name_or_path) return std::move(s.triangulation);
  }
  return surface_from_json(read_json_file(name_or_path));
}

metric::Metric load_metric(const std::string& path, int index) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.contains("metrics")) {
    const Json& list = j.at("metrics");
    if (!list.is_array() || index < 0 || index >= static_cast<int>(list.size())) {
      throw DomainError("metric index " + std::to_string(index) + " out of range");
    }
    return metric_from_json(list[static_cast<std::size_t>(index)]);
  }
  if (index != 0) throw DomainError("metric index given for a single-metric file");
  return metric_from_json(j);
}

}  // namespace teichcells::cli
