#include "teichcells/hypgeom.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

#include "teichcells/errors.hpp"

namespace teichcells::hypgeom {

namespace {

constexpr double kClampSlack = 1e-12;

const Mat3& minkowski_matrix() {
  static const Mat3 j = Vec3(1.0, 1.0, -1.0).asDiagonal();
  return j;
}

// Orthonormal frame (point, unit tangent, unit left normal) in columns.
struct Frame {
  Vec3 p;
  Vec3 t;
  Vec3 n;

  void advance(double length) {
    const double c = std::cosh(length);
    const double s = std::sinh(length);
    const Vec3 p2 = c * p + s * t;
    const Vec3 t2 = s * p + c * t;
    p = p2;
    t = t2;
  }

  // Quarter turn towards the interior normal; the same rule serves walks in
  // either direction since the new interior lies behind the old heading.
  void turn_inward() {
    const Vec3 t2 = n;
    n = -t;
    t = t2;
  }

  Mat3 matrix() const {
    Mat3 m;
    m.col(0) = p;
    m.col(1) = t;
    m.col(2) = n;
    return m;
  }
};

Vec3 unit_tangent_towards(const Vec3& p, const Vec3& q) {
  Vec3 t = q + minkowski(p, q) * p;
  const double norm2 = minkowski(t, t);
  if (!(norm2 > 0.0)) throw NumericalFailure("tangent direction between coincident points");
  return t / std::sqrt(norm2);
}

// Frame at the start of slot k, pointing along the slot, normal into the hexagon.
Frame slot_frame(const HexagonGeometry& hex, int k) {
  const int side = (2 * k + 5) % 6;
  const Vec3& start = hex.vertices[side].coords;
  const Vec3& end = hex.vertices[(side + 1) % 6].coords;
  return {start, unit_tangent_towards(start, end), hex.sides[side].normal};
}

// Isometry mapping frame `from` onto frame `to`. The inverse of a Lorentz
// orthonormal frame F is diag(-1,1,1) F^T J.
Isometry frame_map(const Frame& from, const Frame& to) {
  const Mat3 d = Vec3(-1.0, 1.0, 1.0).asDiagonal();
  const Mat3 inv = d * from.matrix().transpose() * minkowski_matrix();
  return {to.matrix() * inv};
}

void check_lengths(double x0, double x1, double x2) {
  for (double x : {x0, x1, x2}) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError("hexagon side lengths must be positive and finite, got " +
                        std::to_string(x));
    }
  }
}

}  // namespace

double safe_acosh(double x) {
  if (x >= 1.0) return std::acosh(x);
  if (x >= 1.0 - kClampSlack) return 0.0;
  throw DomainError("arccosh argument " + std::to_string(x) + " below 1");
}

HPoint HPoint::from_timelike(const Vec3& v) {
  const double q = minkowski(v, v);
  if (!(q < 0.0)) throw NumericalFailure("vector is not timelike");
  const Vec3 u = v / std::sqrt(-q);
  return {u.z() > 0.0 ? u : Vec3(-u)};
}

double OrientedGeodesic::signed_distance(const HPoint& p) const {
  return std::asinh(minkowski(p.coords, normal));
}

HPoint OrientedGeodesic::foot(const HPoint& p) const {
  const double s = minkowski(p.coords, normal);
  return {(p.coords - s * normal) / std::sqrt(1.0 + s * s)};
}

double point_distance(const HPoint& p, const HPoint& q) {
  // |p - q|^2 = 2 cosh d - 2 = 4 sinh^2(d/2); stable for nearby points.
  const Vec3 diff = p.coords - q.coords;
  double q2 = minkowski(diff, diff);
  if (q2 < 0.0) {
    const double scale = std::max(1.0, -minkowski(p.coords, q.coords));
    if (q2 < -kClampSlack * scale) throw DomainError("points are not on the hyperboloid");
    q2 = 0.0;
  }
  return 2.0 * std::asinh(0.5 * std::sqrt(q2));
}

std::optional<CommonPerpendicular> geodesic_distance(const OrientedGeodesic& g,
                                                     const OrientedGeodesic& h) {
  const double c = minkowski(g.normal, h.normal);
  if (std::abs(c) <= 1.0) return std::nullopt;
  const double root = std::sqrt(c * c - 1.0);
  CommonPerpendicular out;
  out.distance = std::acosh(std::abs(c));
  auto on_sheet = [](Vec3 v) { return HPoint{v.z() > 0.0 ? v : Vec3(-v)}; };
  out.foot_on_first = on_sheet((h.normal - c * g.normal) / root);
  out.foot_on_second = on_sheet((g.normal - c * h.normal) / root);
  return out;
}

Isometry Isometry::rotation(double angle) {
  Isometry r;
  r.matrix << std::cos(angle), -std::sin(angle), 0.0, std::sin(angle), std::cos(angle), 0.0, 0.0,
      0.0, 1.0;
  return r;
}

Isometry Isometry::boost(double distance) {
  Isometry b;
  const double c = std::cosh(distance);
  const double s = std::sinh(distance);
  b.matrix << c, 0.0, s, 0.0, 1.0, 0.0, s, 0.0, c;
  return b;
}

std::array<double, 3> solve_hexagon(double x0, double x1, double x2) {
  check_lengths(x0, x1, x2);
  const std::array<double, 3> x{x0, x1, x2};
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    // cosh a - 1 = (cosh x_i + cosh(x_j - x_k)) / (sinh x_j sinh x_k), free of
    // cancellation when a is small.
    const double q = (std::cosh(x[i]) + std::cosh(x[j] - x[k])) / (std::sinh(x[j]) * std::sinh(x[k]));
    out[i] = 2.0 * std::asinh(std::sqrt(0.5 * q));
  }
  return out;
}

HexagonGeometry HexagonGeometry::transformed(const Isometry& iso) const {
  HexagonGeometry out = *this;
  for (auto& v : out.vertices) v = iso.apply(v);
  for (auto& g : out.sides) g = iso.apply(g);
  return out;
}

HexagonGeometry develop_hexagon(double x0, double x1, double x2) {
  const auto opposite = solve_hexagon(x0, x1, x2);
  HexagonGeometry hex;
  hex.edge_sides = {x0, x1, x2};
  for (int k = 0; k < 3; ++k) hex.arc_sides[k] = opposite[(k + 2) % 3];

  // Side j runs vertex j -> j+1: arc0, slot1, arc1, slot2, arc2, slot0.
  // Walk from A0 both ways round so no vertex carries more than three sides
  // of accumulated roundoff; slot2 is where the two walks meet.
  Frame fwd{Vec3(0.0, 0.0, 1.0), Vec3(1.0, 0.0, 0.0), Vec3(0.0, 1.0, 0.0)};
  const std::array<double, 3> fwd_lengths{hex.arc_sides[0], x1, hex.arc_sides[1]};
  hex.vertices[0] = HPoint{fwd.p};
  for (int j = 0; j < 3; ++j) {
    hex.sides[j] = OrientedGeodesic{fwd.n};
    fwd.advance(fwd_lengths[j]);
    fwd.turn_inward();
    hex.vertices[j + 1] = HPoint{fwd.p};
  }
  hex.sides[3] = OrientedGeodesic{fwd.n};

  Frame bwd{Vec3(0.0, 0.0, 1.0), Vec3(0.0, 1.0, 0.0), Vec3(1.0, 0.0, 0.0)};
  hex.sides[5] = OrientedGeodesic{bwd.n};
  bwd.advance(x0);
  hex.vertices[5] = HPoint{bwd.p};
  bwd.turn_inward();
  hex.sides[4] = OrientedGeodesic{bwd.n};
  bwd.advance(hex.arc_sides[2]);
  hex.vertices[4] = HPoint{bwd.p};
  return hex;
}

HexagonGeometry develop_hexagon(const std::array<double, 3>& x) {
  return develop_hexagon(x[0], x[1], x[2]);
}

HexagonGeometry develop_across(const HexagonGeometry& neighbor, int neighbor_slot,
                               const std::array<double, 3>& x, int slot) {
  const HexagonGeometry local = develop_hexagon(x);
  const Frame source = slot_frame(local, slot);

  const int side = (2 * neighbor_slot + 5) % 6;
  const Vec3& start = neighbor.vertices[side].coords;
  const Vec3& end = neighbor.vertices[(side + 1) % 6].coords;
  // The glued slot is traversed backwards, with the interior on the far side.
  const Frame target{end, unit_tangent_towards(end, start), -neighbor.sides[side].normal};
  return local.transformed(frame_map(source, target));
}

Isometry slot_alignment(const HexagonGeometry& from, int slot, const HexagonGeometry& to,
                        int slot_to) {
  return frame_map(slot_frame(from, slot), slot_frame(to, slot_to));
}

Incircle incircle(const HexagonGeometry& hex) {
  // The centre O satisfies <O, g_k> = sinh r for the three arc normals, so
  // v = M^{-1} (1,1,1) with rows g_k^T J is O / sinh r.
  Mat3 rows;
  for (int k = 0; k < 3; ++k) {
    rows.row(k) = (minkowski_matrix() * hex.arc_geodesic(k).normal).transpose();
  }
  const Eigen::FullPivLU<Mat3> lu(rows);
  if (!lu.isInvertible()) throw NoIncircle("arc geodesics are linearly dependent");
  const Vec3 v = lu.solve(Vec3::Ones());
  const double q = minkowski(v, v);
  if (!v.allFinite() || !(q < -1e-12 * v.squaredNorm()) || v.z() <= 0.0) {
    throw NoIncircle("arc geodesics have no common tangent circle (equidistant locus is not a circle)");
  }
  const double sinh_r = 1.0 / std::sqrt(-q);
  Incircle c;
  c.center = HPoint{v * sinh_r};
  c.radius = std::asinh(sinh_r);
  const double cosh_r = std::sqrt(1.0 + sinh_r * sinh_r);
  for (int k = 0; k < 3; ++k) {
    c.tangent_points[k] =
        HPoint{(c.center.coords - sinh_r * hex.arc_geodesic(k).normal) / cosh_r};
  }
  return c;
}

double signed_tangent_gap(const HexagonGeometry& hex, const Incircle& circle, int i) {
  if (i < 0 || i > 2) throw DomainError("tangent gap index must be 0, 1 or 2");
  const double side = minkowski(circle.center.coords, hex.slot_geodesic((i + 1) % 3).normal);
  const double gap = point_distance(circle.tangent_points[i], hex.b(i));
  return side >= 0.0 ? gap : -gap;
}

double signed_tangent_gap(const HexagonGeometry& hex, int i) {
  return signed_tangent_gap(hex, incircle(hex), i);
}

double half_arc_excess(const std::array<double, 3>& arcs, int i) {
  return 0.5 * (arcs[i % 3] + arcs[(i + 1) % 3] - arcs[(i + 2) % 3]);
}

std::array<double, 3> hexagon_with_gap(double gap, double other) {
  auto excess = [&](double log_x) {
    const auto opp = solve_hexagon(other, std::exp(log_x), other);
    const std::array<double, 3> arcs{opp[2], opp[0], opp[1]};
    return half_arc_excess(arcs, 0) - gap;
  };
  double lo = std::log(1e-6);
  double hi = std::log(50.0);
  if (!(excess(lo) > 0.0 && excess(hi) < 0.0)) {
    throw DomainError("requested tangent gap is out of reach for this side length");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return {other, std::exp(0.5 * (lo + hi)), other};
}

}  // namespace teichcells::hypgeom
