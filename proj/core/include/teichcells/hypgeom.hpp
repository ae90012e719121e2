#pragma once

// Hyperboloid-model primitives and right-angled hexagons.
//
// Points live on the upper sheet of <p,p> = -1 for the Minkowski form
// <u,v> = u.x v.x + u.y v.y - u.z v.z. A geodesic is stored as a unit
// spacelike normal g; the positive side of g is {p : <p,g> > 0}.
//
// Hexagon labelling. The six sides of a right-angled hexagon, walked
// counterclockwise, are
//
//     slot0, arc0, slot1, arc1, slot2, arc2
//
// where the slots are the sides glued to other hexagons and the arcs lie on
// the surface boundary. Vertices are A_k, B_k with arc k = A_k B_k and
// slot k = B_{k-1} A_k (indices mod 3). Arc (k+1) mod 3 faces slot k; arcs
// k and (k-1) mod 3 are adjacent to slot k. All indices are zero based.

#include <array>
#include <optional>

#include <Eigen/Core>

namespace teichcells::hypgeom {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Minkowski form of signature (+,+,-).
inline double minkowski(const Vec3& u, const Vec3& v) {
  return u.x() * v.x() + u.y() * v.y() - u.z() * v.z();
}

/// arccosh with roundoff clamping: arguments in [1 - 1e-12, 1) map to 0,
/// anything smaller throws DomainError.
double safe_acosh(double x);

struct HPoint {
  Vec3 coords{0.0, 0.0, 1.0};

  static HPoint origin() { return HPoint{}; }
  /// Normalizes a future timelike vector onto the hyperboloid.
  static HPoint from_timelike(const Vec3& v);
};

struct OrientedGeodesic {
  Vec3 normal{1.0, 0.0, 0.0};

  OrientedGeodesic reversed() const { return {-normal}; }
  /// Signed distance of p from the geodesic, positive on the positive side.
  double signed_distance(const HPoint& p) const;
  /// Closest point of the geodesic to p.
  HPoint foot(const HPoint& p) const;
};

double point_distance(const HPoint& p, const HPoint& q);

struct CommonPerpendicular {
  double distance = 0.0;
  HPoint foot_on_first;
  HPoint foot_on_second;
};

/// Distance between two geodesics together with the feet of their common
/// perpendicular, or nullopt when they intersect (|<g,h>| <= 1).
std::optional<CommonPerpendicular> geodesic_distance(const OrientedGeodesic& g,
                                                     const OrientedGeodesic& h);

/// Orientation-preserving isometry of the hyperboloid, stored as a Lorentz matrix.
struct Isometry {
  Mat3 matrix = Mat3::Identity();

  HPoint apply(const HPoint& p) const { return {matrix * p.coords}; }
  OrientedGeodesic apply(const OrientedGeodesic& g) const { return {matrix * g.normal}; }
  Isometry then(const Isometry& next) const { return {next.matrix * matrix}; }

  static Isometry rotation(double angle);
  /// Translation of length `distance` along the x axis through the origin.
  static Isometry boost(double distance);
};

/// Lengths of the arc sides opposite each slot side: result[i] is the side
/// facing x[i], cosh a_i = (cosh x_i + cosh x_{i+1} cosh x_{i+2}) /
/// (sinh x_{i+1} sinh x_{i+2}).
std::array<double, 3> solve_hexagon(double x0, double x1, double x2);

struct HexagonGeometry {
  std::array<double, 3> edge_sides{};  ///< slot k length
  std::array<double, 3> arc_sides{};   ///< arc k length, |A_k B_k|
  /// A0, B0, A1, B1, A2, B2.
  std::array<HPoint, 6> vertices{};
  /// Side j runs from vertex j to vertex j+1: arc0, slot1, arc1, slot2, arc2,
  /// slot0. Every normal points into the hexagon.
  std::array<OrientedGeodesic, 6> sides{};

  const HPoint& a(int k) const { return vertices[2 * k]; }
  const HPoint& b(int k) const { return vertices[2 * k + 1]; }
  const OrientedGeodesic& arc_geodesic(int k) const { return sides[2 * k]; }
  const OrientedGeodesic& slot_geodesic(int k) const { return sides[(2 * k + 5) % 6]; }

  HexagonGeometry transformed(const Isometry& iso) const;
};

/// Places the hexagon with slot lengths (x0, x1, x2) so that slot0 lies on
/// the geodesic x = 0 and A0 = (0, 0, 1), interior towards positive x.
HexagonGeometry develop_hexagon(double x0, double x1, double x2);
HexagonGeometry develop_hexagon(const std::array<double, 3>& x);

/// Develops the hexagon with slot lengths `x` so that its slot `slot` is glued
/// orientation-reversingly onto slot `neighbor_slot` of `neighbor`, with the
/// two interiors on opposite sides of the shared geodesic.
HexagonGeometry develop_across(const HexagonGeometry& neighbor, int neighbor_slot,
                               const std::array<double, 3>& x, int slot);

/// Isometry taking slot `slot` of `from` onto slot `slot_to` of `to`
/// (same direction, same interior side). The two slots must have equal length.
Isometry slot_alignment(const HexagonGeometry& from, int slot, const HexagonGeometry& to,
                        int slot_to);

struct Incircle {
  HPoint center;
  double radius = 0.0;
  /// tangent_points[k] lies on arc geodesic k.
  std::array<HPoint, 3> tangent_points{};
};

/// Circle tangent to the three arc-side geodesics from the hexagon's side.
/// Throws NoIncircle when no such circle exists.
Incircle incircle(const HexagonGeometry& hex);

/// Signed |X_i B_i|: positive when the incircle centre lies on the hexagon's
/// side of slot (i+1) = B_i A_{i+1}, zero on it, negative beyond it.
double signed_tangent_gap(const HexagonGeometry& hex, int i);
double signed_tangent_gap(const HexagonGeometry& hex, const Incircle& circle, int i);

/// (|A_i B_i| + |A_{i+1} B_{i+1}| - |A_{i+2} B_{i+2}|) / 2 from the arc lengths alone.
double half_arc_excess(const std::array<double, 3>& arcs, int i);

/// Slot lengths (other, x, other) for which half_arc_excess(.., 0) equals
/// `gap`, found by bisection on the slot-1 length. Used to build hexagons on
/// either side of the degenerate configuration where the incircle centre
/// sits on slot 1.
std::array<double, 3> hexagon_with_gap(double gap, double other = 1.0);

}  // namespace teichcells::hypgeom
