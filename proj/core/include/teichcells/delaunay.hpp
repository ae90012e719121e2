#pragma once

// Delaunay decompositions from the sign of psi_0, the map Pi_h into the
// fillable part of the arc complex, and the spine as a weighted dual graph.
//
// An edge e is locally Delaunay when psi_0(e) = s + s' >= 0, where s and s'
// are the signed incircle gaps on its two sides. Edges with psi_0(e) = 0
// separate hexagons that share an incircle and are merged into one cell.

#include <vector>

#include "teichcells/metric.hpp"
#include "teichcells/surface.hpp"

namespace teichcells::delaunay {

using metric::Metric;
using surface::CellDecomposition;
using surface::IdealTriangulation;

inline constexpr double kDefaultZeroTolerance = 1e-9;
inline constexpr int kDefaultFlipCap = 10'000;

struct DelaunayOptions {
  int flip_cap = kDefaultFlipCap;
  /// Edges with psi_0 >= -tolerance count as Delaunay; |psi_0| <= tolerance merges cells.
  double tolerance = kDefaultZeroTolerance;
};

struct DelaunayResult {
  IdealTriangulation triangulation;
  Metric metric;
  /// Edge index flipped in each round.
  std::vector<int> flips;
};

/// Flips a most negative edge (lowest index on ties) until every psi_0 is
/// at least -tolerance. Throws NonTermination past the cap.
DelaunayResult make_delaunay(const IdealTriangulation& t, const Metric& m,
                             const DelaunayOptions& options = {});

double min_psi0(const IdealTriangulation& t, const Metric& m);

struct DelaunayCells {
  CellDecomposition decomposition;
  /// pi_h per edge of the triangulation; zero on deleted edges.
  std::vector<double> pi;
  /// Largest incircle mismatch (centre distance or radius) across a deleted edge.
  double incircle_mismatch = 0.0;
};

inline constexpr double kIncircleCoincidence = 1e-6;

/// Requires a Delaunay input. Deletes the edges with |psi_0| <= tolerance.
/// Throws DegenerateCellError when those edges contain a cycle or when the
/// hexagons of a merged cell do not share their incircle.
DelaunayCells delaunay_cells(const IdealTriangulation& t, const Metric& m, double h,
                             double tolerance = kDefaultZeroTolerance);

/// A point of |A(S) - A_inf(S)| x R_{>0}: the simplex spanned by the kept
/// edges of `decomposition`, barycentric weights on those edges (ascending
/// edge index), and the scale sum pi_h.
struct ArcComplexPoint {
  CellDecomposition decomposition;
  std::vector<double> weights;
  double scale = 0.0;
  double h = 0.0;
};

/// Throws DomainError unless weights are positive, sum to 1 within 1e-12,
/// match the kept edges, and the scale is positive.
void validate(const ArcComplexPoint& p);

struct PiResult {
  ArcComplexPoint point;
  /// Delaunay triangulation and metric the point was read from.
  IdealTriangulation triangulation;
  Metric metric;
  std::vector<int> flips;
};

PiResult pi_map(const IdealTriangulation& t, const Metric& m, double h,
                const DelaunayOptions& options = {});

struct PointComparison {
  bool same_cells = false;
  /// Max weight difference under the best cell-structure match.
  double weight_error = 0.0;
  double scale_error = 0.0;
};

/// Compares two points through every isomorphism of their cell structures,
/// keeping the one with the smallest weight error.
PointComparison compare_points(const ArcComplexPoint& a, const ArcComplexPoint& b);

bool points_agree(const ArcComplexPoint& a, const ArcComplexPoint& b, double tolerance);

struct SpineLink {
  int edge = -1;
  /// Cells on side 0 and side 1 of the edge.
  std::array<int, 2> cells{};
  /// Incircle gap alpha on each side, measured through the incircle.
  std::array<double, 2> gaps{};
};

struct Spine {
  int node_count = 0;
  std::vector<SpineLink> links;
  std::vector<double> radii;
  std::vector<int> degrees;

  int euler_characteristic() const { return node_count - static_cast<int>(links.size()); }
};

Spine spine(const CellDecomposition& decomposition, const Metric& m);

}  // namespace teichcells::delaunay
