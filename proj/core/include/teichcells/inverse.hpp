#pragma once

// The image of Psi_h on a fixed triangulation and its inversion.
//
// For h >= 0 the image is the open convex polytope of vectors with a positive
// sum along every edge cycle, that is along every closed walk in the dual
// graph that never turns straight back through the edge it arrived by. Such
// a walk's sum is a positive combination of sums over simple cycles and over
// barbells, so those two families give all the inequalities.

#include <cstdint>
#include <optional>
#include <vector>

#include "teichcells/delaunay.hpp"
#include "teichcells/metric.hpp"
#include "teichcells/surface.hpp"

namespace teichcells::inverse {

using metric::Metric;
using surface::IdealTriangulation;

inline constexpr double kMembershipMargin = 1e-12;

struct Membership {
  bool inside = false;
  /// Simple cycle or barbell with the smallest sum, when that sum is not
  /// above the margin.
  std::optional<surface::EdgeCycle> witness;
  double min_cycle_sum = 0.0;
};

Membership polytope_contains(const IdealTriangulation& t, const std::vector<double>& target);

struct SolveOptions {
  int max_iterations = 200;
  int random_restarts = 5;
  std::uint64_t seed = 0x5eed;
  /// Required final accuracy, max norm on psi.
  double tolerance = 1e-9;
};

struct SolveResult {
  Metric metric;
  double residual = 0.0;
  int iterations = 0;
  /// 0 for the all-ones start, k for the k-th random restart, and
  /// random_restarts + 1 for the continuation fallback.
  int attempt = 0;
};

/// Finds the metric on `t` whose psi_h equals `target` by damped Newton in
/// log-lengths, from all lengths 1 and then from seeded random starts. If
/// every start fails, follows the segment from psi(all ones) to the target
/// with warm-started Newton steps. Throws InvalidTarget outside the image,
/// NoConvergence when all of this fails.
SolveResult solve_metric(const IdealTriangulation& t, const std::vector<double>& target, double h,
                         const SolveOptions& options = {});

struct PiInverseResult {
  /// Completion with the added diagonals deleted again.
  surface::CellDecomposition decomposition;
  IdealTriangulation triangulation;
  Metric metric;
  std::vector<int> added;
};

/// Completes the point's cells to a triangulation, then solves for
/// psi_h = scale * weight on kept edges and 0 on the added diagonals.
PiInverseResult pi_inverse(const delaunay::ArcComplexPoint& p, surface::FanAnchor anchor = {},
                           const SolveOptions& options = {});

}  // namespace teichcells::inverse
