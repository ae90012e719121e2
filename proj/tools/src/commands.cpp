#include "commands.hpp"

#include <cmath>
#include <queue>

#include "teichcells/errors.hpp"
#include "teichcells/hypgeom.hpp"
#include "teichcells/inverse.hpp"
#include "teichcells/metric.hpp"
#include "teichcells/cli/sampling.hpp"

namespace teichcells::cli {

namespace {

void check_h(double h) {
  if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("--h must be a real number >= 0");
}

delaunay::DelaunayOptions delaunay_options(const CommandOptions& o) {
  if (!(o.tolerance > 0.0) || !std::isfinite(o.tolerance)) throw DomainError("--tol must be > 0");
  delaunay::DelaunayOptions opts;
  opts.tolerance = o.tolerance;
  return opts;
}

Json disk(const hypgeom::HPoint& p) {
  const auto& c = p.coords;
  return Json::array({c.x() / (1.0 + c.z()), c.y() / (1.0 + c.z())});
}

// Every hexagon developed into one picture along a spanning tree of the dual graph.
Json development(const surface::IdealTriangulation& t, const metric::Metric& m) {
  std::vector<std::optional<hypgeom::HexagonGeometry>> placed(
      static_cast<std::size_t>(t.hexagon_count()));
  placed[0] = hypgeom::develop_hexagon(metric::hexagon_edge_lengths(t, m, 0));
  std::queue<int> todo;
  todo.push(0);
  while (!todo.empty()) {
    const int h = todo.front();
    todo.pop();
    for (int s = 0; s < 3; ++s) {
      const auto next = t.partner({h, s});
      if (placed[next.hexagon]) continue;
      placed[next.hexagon] = hypgeom::develop_across(
          *placed[h], s, metric::hexagon_edge_lengths(t, m, next.hexagon), next.slot);
      todo.push(next.hexagon);
    }
  }

  Json out = Json::array();
  for (int h = 0; h < t.hexagon_count(); ++h) {
    const auto& hex = *placed[h];
    Json vertices = Json::array();
    Json projected = Json::array();
    for (const auto& v : hex.vertices) {
      vertices.push_back(to_json(v));
      projected.push_back(disk(v));
    }
    Json circle = nullptr;
    try {
      const auto c = hypgeom::incircle(hex);
      Json tangents = Json::array();
      for (const auto& x : c.tangent_points) tangents.push_back(to_json(x));
      circle = {{"center", to_json(c.center)},
                {"center_disk", disk(c.center)},
                {"radius", c.radius},
                {"tangent_points", tangents}};
    } catch (const NoIncircle&) {
    }
    out.push_back({{"hexagon", h},
                   {"slot_edges", {t.edge_at(h, 0), t.edge_at(h, 1), t.edge_at(h, 2)}},
                   {"vertices", vertices},
                   {"vertices_disk", projected},
                   {"incircle", circle}});
  }
  return out;
}

}  // namespace

Json surface_info(const CommandOptions& o) {
  const auto t = load_surface(o.surface);
  const auto inv = surface::surface_invariants(t);
  Json boundary = Json::array();
  for (const auto& component : inv.boundary_corners) {
    Json corners = Json::array();
    for (const auto& c : component) corners.push_back({c.hexagon, c.arc});
    boundary.push_back(corners);
  }
  std::vector<int> self_glued;
  for (int e = 0; e < t.edge_count(); ++e) {
    if (t.self_glued(e)) self_glued.push_back(e);
  }
  return {{"hexagons", t.hexagon_count()},
          {"edges", t.edge_count()},
          {"euler_characteristic", inv.chi},
          {"genus", inv.genus},
          {"boundary_components", inv.boundary_count},
          {"boundary_corners", boundary},
          {"self_glued_edges", self_glued},
          {"edge_cycles", surface::enumerate_edge_cycles(t).size()},
          {"edge_barbells", surface::enumerate_edge_barbells(t).size()},
          {"surface", to_json(t)}};
}

Json psi_command(const CommandOptions& o) {
  check_h(o.h);
  const auto t = load_surface(o.surface);
  const auto m = load_metric(o.metric, o.metric_index);
  metric::validate(t, m);
  return to_json(metric::psi(t, m, o.h));
}

Json delaunay_command(const CommandOptions& o) {
  const auto t = load_surface(o.surface);
  const auto m = load_metric(o.metric, o.metric_index);
  const auto result = delaunay::make_delaunay(t, m, delaunay_options(o));
  const auto cells = delaunay::delaunay_cells(result.triangulation, result.metric, 0.0, o.tolerance);
  Json out{{"surface", to_json(result.triangulation)},
           {"metric", to_json(result.metric)},
           {"flips", result.flips},
           {"psi0", metric::psi(result.triangulation, result.metric, 0.0).values},
           {"deleted_edges", cells.decomposition.deleted()},
           {"cell_sides", Json::array()}};
  for (const auto& cell : cells.decomposition.cells()) out["cell_sides"].push_back(cell.side_count());
  if (o.emit_development) out["development"] = development(result.triangulation, result.metric);
  return out;
}

Json pi_command(const CommandOptions& o) {
  check_h(o.h);
  const auto t = load_surface(o.surface);
  const auto m = load_metric(o.metric, o.metric_index);
  const auto result = delaunay::pi_map(t, m, o.h, delaunay_options(o));
  Json out = to_json(result.point);
  out["metric"] = to_json(result.metric);
  out["flips"] = result.flips;
  return out;
}

Json pi_inverse_command(const CommandOptions& o) {
  const auto p = point_from_json(read_json_file(o.point));
  const auto result = inverse::pi_inverse(p, surface::FanAnchor{o.anchor});
  const auto achieved = metric::psi(result.triangulation, result.metric, p.h).values;
  return {{"surface", to_json(result.triangulation)},
          {"metric", to_json(result.metric)},
          {"added_edges", result.added},
          {"psi", achieved},
          {"h", p.h}};
}

Json sample_command(const CommandOptions& o) {
  if (o.count <= 0) throw DomainError("--count must be positive");
  const auto t = load_surface(o.surface);
  Json metrics = Json::array();
  for (int i = 0; i < o.count; ++i) {
    metrics.push_back(to_json(sample_metric(t, stream_seed(o.seed, static_cast<std::uint64_t>(i)))));
  }
  return {{"surface", to_json(t)}, {"seed", o.seed}, {"metrics", metrics}};
}

VerificationReport verify_command(const CommandOptions& o) {
  return run_suite(o.suite, o.samples, o.seed);
}

}  // namespace teichcells::cli
