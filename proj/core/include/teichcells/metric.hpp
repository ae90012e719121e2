#pragma once

// Hyperbolic metrics on an ideally triangulated surface, recorded as the
// geodesic length of every edge, and the psi_h coordinates built from them.

#include <array>
#include <vector>

#include <Eigen/Core>

#include "teichcells/surface.hpp"

namespace teichcells::metric {

using surface::IdealTriangulation;

struct Metric {
  std::vector<double> lengths;
};

/// Throws DomainError unless there is one positive finite length per edge.
void validate(const IdealTriangulation& t, const Metric& m);

/// F_h(t) = integral of cosh^h over [0, t]. Closed forms for h in {0, 1, 2},
/// adaptive Simpson otherwise. Throws DomainError for h < 0.
double F(double t, double h);
/// Always the quadrature path, for checking it against the closed forms.
double F_quadrature(double t, double h);

/// Boundary arc lengths, per hexagon and arc index.
struct CornerLengths {
  std::vector<std::array<double, 3>> arcs;

  double at(surface::Corner c) const { return arcs.at(c.hexagon)[c.arc]; }
};

std::array<double, 3> hexagon_edge_lengths(const IdealTriangulation& t, const Metric& m,
                                           int hexagon);
CornerLengths boundary_arcs(const IdealTriangulation& t, const Metric& m);

/// Total length of each boundary component, ordered as in surface_invariants.
std::vector<double> boundary_lengths(const IdealTriangulation& t, const Metric& m);

struct PsiVector {
  double h = 0.0;
  std::vector<double> values;
  /// (a + b - c) / 2 for every hexagon slot: a, b the arcs adjacent to the
  /// slot and c the arc facing it.
  std::vector<std::array<double, 3>> half_terms;
};

PsiVector psi(const IdealTriangulation& t, const Metric& m, double h);

/// d psi_h(e) / d length(e'), rows indexed by e.
Eigen::MatrixXd psi_jacobian(const IdealTriangulation& t, const Metric& m, double h);

struct FlipResult {
  IdealTriangulation triangulation;
  Metric metric;
};

/// Length of the arc that replaces `e` under a flip: the distance between the
/// two arcs facing e in the octagon made of e's two hexagons. Closed form from
/// right-angled pentagon trigonometry. Throws SelfGluedEdge.
double flipped_length(const IdealTriangulation& t, const Metric& m, int e);

/// combinatorial_flip plus the new length. Throws SelfGluedEdge, or
/// NumericalFailure when the new length overflows.
FlipResult flip_geometric(const IdealTriangulation& t, const Metric& m, int e);

}  // namespace teichcells::metric
