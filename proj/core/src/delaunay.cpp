#include "teichcells/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "teichcells/errors.hpp"
#include "teichcells/hypgeom.hpp"

namespace teichcells::delaunay {

namespace {

double incircle_mismatch_across(const IdealTriangulation& t, const Metric& m, int e) {
  const auto first = t.edge(e).sides[0];
  const auto second = t.edge(e).sides[1];
  const auto a = hypgeom::develop_hexagon(metric::hexagon_edge_lengths(t, m, first.hexagon));
  const auto b = hypgeom::develop_across(a, first.slot,
                                         metric::hexagon_edge_lengths(t, m, second.hexagon),
                                         second.slot);
  const auto ca = hypgeom::incircle(a);
  const auto cb = hypgeom::incircle(b);
  return std::max(hypgeom::point_distance(ca.center, cb.center), std::abs(ca.radius - cb.radius));
}

}  // namespace

double min_psi0(const IdealTriangulation& t, const Metric& m) {
  const auto values = metric::psi(t, m, 0.0).values;
  return *std::min_element(values.begin(), values.end());
}

DelaunayResult make_delaunay(const IdealTriangulation& t, const Metric& m,
                             const DelaunayOptions& options) {
  metric::validate(t, m);
  DelaunayResult out{t, m, {}};
  for (;;) {
    const auto values = metric::psi(out.triangulation, out.metric, 0.0).values;
    int worst = 0;
    for (int e = 1; e < static_cast<int>(values.size()); ++e) {
      if (values[e] < values[worst]) worst = e;
    }
    if (values[worst] >= -options.tolerance) return out;
    if (static_cast<int>(out.flips.size()) >= options.flip_cap) {
      throw NonTermination("no Delaunay triangulation after " +
                               std::to_string(options.flip_cap) + " flips",
                           out.flips);
    }
    auto flipped = metric::flip_geometric(out.triangulation, out.metric, worst);
    out.triangulation = std::move(flipped.triangulation);
    out.metric = std::move(flipped.metric);
    out.flips.push_back(worst);
  }
}

DelaunayCells delaunay_cells(const IdealTriangulation& t, const Metric& m, double h,
                             double tolerance) {
  const auto psi0 = metric::psi(t, m, 0.0).values;
  std::vector<int> zero;
  for (int e = 0; e < t.edge_count(); ++e) {
    if (psi0[e] < -tolerance) {
      throw DomainError("triangulation is not Delaunay: psi_0(" + std::to_string(e) +
                        ") = " + std::to_string(psi0[e]));
    }
    if (psi0[e] <= tolerance) zero.push_back(e);
  }

  DelaunayCells out;
  try {
    out.decomposition = surface::delete_edges(t, zero);
  } catch (const NonFillable& err) {
    throw DegenerateCellError(std::string("edges with psi_0 = 0 are not fillable: ") + err.what());
  }

  for (int e : zero) {
    const double mismatch = incircle_mismatch_across(t, m, e);
    out.incircle_mismatch = std::max(out.incircle_mismatch, mismatch);
    if (mismatch > kIncircleCoincidence) {
      throw DegenerateCellError("incircles across deleted edge " + std::to_string(e) +
                                " differ by " + std::to_string(mismatch));
    }
  }

  const auto psih = h == 0.0 ? psi0 : metric::psi(t, m, h).values;
  out.pi.assign(static_cast<std::size_t>(t.edge_count()), 0.0);
  for (int e : out.decomposition.kept_edges()) {
    if (!(psih[e] > 0.0)) {
      throw DegenerateCellError("kept edge " + std::to_string(e) + " has pi_h <= 0");
    }
    out.pi[e] = psih[e];
  }
  return out;
}

void validate(const ArcComplexPoint& p) {
  const auto kept = p.decomposition.kept_edges();
  if (p.weights.size() != kept.size()) {
    throw DomainError("point has " + std::to_string(p.weights.size()) + " weights for " +
                      std::to_string(kept.size()) + " kept edges");
  }
  double sum = 0.0;
  for (double w : p.weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("weights must sum to 1");
  if (!(p.scale > 0.0) || !std::isfinite(p.scale)) throw DomainError("scale must be positive");
  if (!(p.h >= 0.0) || !std::isfinite(p.h)) throw DomainError("h must be >= 0");
}

PiResult pi_map(const IdealTriangulation& t, const Metric& m, double h,
                const DelaunayOptions& options) {
  if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("h must be >= 0");
  auto del = make_delaunay(t, m, options);
  auto cells = delaunay_cells(del.triangulation, del.metric, h, options.tolerance);

  PiResult out{{std::move(cells.decomposition), {}, 0.0, h},
               std::move(del.triangulation),
               std::move(del.metric),
               std::move(del.flips)};
  const auto kept = out.point.decomposition.kept_edges();
  for (int e : kept) out.point.scale += cells.pi[e];
  for (int e : kept) out.point.weights.push_back(cells.pi[e] / out.point.scale);
  return out;
}

PointComparison compare_points(const ArcComplexPoint& a, const ArcComplexPoint& b) {
  PointComparison out;
  out.scale_error = std::abs(a.scale - b.scale);
  out.weight_error = std::numeric_limits<double>::infinity();
  const auto kept_a = a.decomposition.kept_edges();
  const auto kept_b = b.decomposition.kept_edges();
  std::vector<int> slot_b(static_cast<std::size_t>(b.decomposition.base().edge_count()), -1);
  for (std::size_t i = 0; i < kept_b.size(); ++i) slot_b[kept_b[i]] = static_cast<int>(i);

  for (const auto& match : surface::all_isomorphisms(a.decomposition, b.decomposition)) {
    out.same_cells = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < kept_a.size(); ++i) {
      const int j = slot_b[match.edge_map[kept_a[i]]];
      worst = std::max(worst, std::abs(a.weights[i] - b.weights[j]));
    }
    out.weight_error = std::min(out.weight_error, worst);
  }
  return out;
}

bool points_agree(const ArcComplexPoint& a, const ArcComplexPoint& b, double tolerance) {
  const auto cmp = compare_points(a, b);
  return cmp.same_cells && cmp.weight_error <= tolerance &&
         cmp.scale_error <= tolerance * std::max(1.0, std::abs(a.scale));
}

Spine spine(const CellDecomposition& decomposition, const Metric& m) {
  const auto& t = decomposition.base();
  metric::validate(t, m);
  std::vector<hypgeom::HexagonGeometry> hexes;
  std::vector<hypgeom::Incircle> circles;
  for (int h = 0; h < t.hexagon_count(); ++h) {
    hexes.push_back(hypgeom::develop_hexagon(metric::hexagon_edge_lengths(t, m, h)));
    circles.push_back(hypgeom::incircle(hexes.back()));
  }

  Spine s;
  s.node_count = static_cast<int>(decomposition.cells().size());
  for (const auto& cell : decomposition.cells()) {
    s.radii.push_back(circles[cell.hexagons.front()].radius);
    s.degrees.push_back(cell.side_count());
  }
  for (int e : decomposition.kept_edges()) {
    SpineLink link;
    link.edge = e;
    for (int side = 0; side < 2; ++side) {
      const auto inc = t.edge(e).sides[side];
      link.cells[side] = decomposition.cell_of(inc.hexagon);
      // Slot k is B_{k-1} A_k, so its gap is the one indexed k-1.
      link.gaps[side] = hypgeom::signed_tangent_gap(hexes[inc.hexagon], circles[inc.hexagon],
                                                    (inc.slot + 2) % 3);
    }
    s.links.push_back(link);
  }
  return s;
}

}  // namespace teichcells::delaunay
