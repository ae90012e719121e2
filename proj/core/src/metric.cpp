#include "teichcells/metric.hpp"

#include <cmath>
#include <string>

#include "teichcells/errors.hpp"
#include "teichcells/hypgeom.hpp"

namespace teichcells::metric {

namespace {

void check_h(double h) {
  if (!(h >= 0.0) || !std::isfinite(h)) {
    throw DomainError("h must be a finite real >= 0, got " + std::to_string(h));
  }
}

struct SimpsonPanel {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class Fn>
double adaptive_simpson(const Fn& f, const SimpsonPanel& p, double eps, int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adaptive_simpson(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * eps, depth - 1);
}

// d alpha_i / d x_j for the arc alpha_i opposite slot i.
std::array<std::array<double, 3>, 3> opposite_arc_derivatives(const std::array<double, 3>& x) {
  std::array<double, 3> c{}, s{};
  for (int i = 0; i < 3; ++i) {
    c[i] = std::cosh(x[i]);
    s[i] = std::sinh(x[i]);
  }
  std::array<std::array<double, 3>, 3> d{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    const double q = (c[i] + std::cosh(x[j] - x[k])) / (s[j] * s[k]);
    const double u = 1.0 + q;
    const double sinh_alpha = std::sqrt(q * (q + 2.0));
    d[i][i] = s[i] / (s[j] * s[k]) / sinh_alpha;
    d[i][j] = (c[k] / s[k] - u * c[j] / s[j]) / sinh_alpha;
    d[i][k] = (c[j] / s[j] - u * c[k] / s[k]) / sinh_alpha;
  }
  return d;
}

// The common perpendicular from slot k to the facing arc k+1 cuts the hexagon
// into two right-angled pentagons. In the one containing arc k and slot k+1,
// cosh d = sinh a_k sinh x_{k+1} and sinh u = cosh x_{k+1} / sinh d, where u is
// measured along slot k from A_k. Expanding a_k by the cosine law,
// sinh^2 d = (C_{k+2} + C_{k+1} e^{-x_k}) (C_{k+2} + C_{k+1} e^{x_k}) / sinh^2 x_k
// with C_i = cosh x_i, a product of positive terms.
struct FacingPerpendicular {
  double distance = 0.0;
  double from_a = 0.0;
};

FacingPerpendicular facing_perpendicular(const IdealTriangulation& t, const Metric& m,
                                         surface::Incidence inc) {
  const auto x = hexagon_edge_lengths(t, m, inc.hexagon);
  const int k = inc.slot;
  const double next = std::cosh(x[(k + 1) % 3]);
  const double last = std::cosh(x[(k + 2) % 3]);
  const double sinh_d =
      std::sqrt((last + next * std::exp(-x[k])) * (last + next * std::exp(x[k]))) / std::sinh(x[k]);
  return {std::asinh(sinh_d), std::asinh(next / sinh_d)};
}

}  // namespace

void validate(const IdealTriangulation& t, const Metric& m) {
  if (static_cast<int>(m.lengths.size()) != t.edge_count()) {
    throw DomainError("metric has " + std::to_string(m.lengths.size()) + " lengths for " +
                      std::to_string(t.edge_count()) + " edges");
  }
  for (std::size_t e = 0; e < m.lengths.size(); ++e) {
    if (!(m.lengths[e] > 0.0) || !std::isfinite(m.lengths[e])) {
      throw DomainError("edge " + std::to_string(e) + " has non-positive length");
    }
  }
}

double F_quadrature(double t, double h) {
  check_h(h);
  if (!std::isfinite(t)) throw DomainError("F needs a finite argument");
  if (t == 0.0) return 0.0;
  if (t < 0.0) return -F_quadrature(-t, h);
  const auto f = [h](double u) { return std::pow(std::cosh(u), h); };
  // Split into a few panels first so the error test never sees a lucky
  // single-panel agreement.
  constexpr int kPanels = 8;
  const double step = t / kPanels;
  const double rough = t * std::pow(std::cosh(t), h);
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double a = i * step;
    const double b = (i + 1 == kPanels) ? t : a + step;
    const double fa = f(a);
    const double fm = f(0.5 * (a + b));
    const double fb = f(b);
    total += adaptive_simpson(f, {a, b, fa, fm, fb, simpson(a, b, fa, fm, fb)},
                              1e-14 * rough / kPanels, 48);
  }
  return total;
}

double F(double t, double h) {
  check_h(h);
  if (!std::isfinite(t)) throw DomainError("F needs a finite argument");
  if (h == 0.0) return t;
  if (h == 1.0) return std::sinh(t);
  if (h == 2.0) return 0.5 * (t + std::sinh(t) * std::cosh(t));
  return F_quadrature(t, h);
}

std::array<double, 3> hexagon_edge_lengths(const IdealTriangulation& t, const Metric& m,
                                           int hexagon) {
  return {m.lengths[t.edge_at(hexagon, 0)], m.lengths[t.edge_at(hexagon, 1)],
          m.lengths[t.edge_at(hexagon, 2)]};
}

CornerLengths boundary_arcs(const IdealTriangulation& t, const Metric& m) {
  validate(t, m);
  CornerLengths out;
  out.arcs.resize(static_cast<std::size_t>(t.hexagon_count()));
  for (int h = 0; h < t.hexagon_count(); ++h) {
    const auto x = hexagon_edge_lengths(t, m, h);
    const auto opposite = hypgeom::solve_hexagon(x[0], x[1], x[2]);
    // Arc k faces slot k-1.
    for (int k = 0; k < 3; ++k) out.arcs[h][k] = opposite[(k + 2) % 3];
  }
  return out;
}

std::vector<double> boundary_lengths(const IdealTriangulation& t, const Metric& m) {
  const CornerLengths arcs = boundary_arcs(t, m);
  std::vector<double> out;
  for (const auto& component : surface::surface_invariants(t).boundary_corners) {
    double sum = 0.0;
    for (const auto& c : component) sum += arcs.at(c);
    out.push_back(sum);
  }
  return out;
}

PsiVector psi(const IdealTriangulation& t, const Metric& m, double h) {
  check_h(h);
  const CornerLengths arcs = boundary_arcs(t, m);
  PsiVector out;
  out.h = h;
  out.half_terms.resize(static_cast<std::size_t>(t.hexagon_count()));
  for (int hex = 0; hex < t.hexagon_count(); ++hex) {
    for (int k = 0; k < 3; ++k) {
      out.half_terms[hex][k] = hypgeom::half_arc_excess(arcs.arcs[hex], (k + 2) % 3);
    }
  }
  out.values.assign(static_cast<std::size_t>(t.edge_count()), 0.0);
  for (int e = 0; e < t.edge_count(); ++e) {
    for (const auto& inc : t.edge(e).sides) {
      out.values[e] += F(out.half_terms[inc.hexagon][inc.slot], h);
    }
  }
  return out;
}

Eigen::MatrixXd psi_jacobian(const IdealTriangulation& t, const Metric& m, double h) {
  const PsiVector p = psi(t, m, h);
  const int n = t.edge_count();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int hex = 0; hex < t.hexagon_count(); ++hex) {
    const auto x = hexagon_edge_lengths(t, m, hex);
    const auto dalpha = opposite_arc_derivatives(x);
    // d arc_k / d x_j with arc k opposite slot k-1.
    auto darc = [&](int k, int j) { return dalpha[(k + 2) % 3][j]; };
    for (int k = 0; k < 3; ++k) {
      const int e = t.edge_at(hex, k);
      const double weight = std::pow(std::cosh(p.half_terms[hex][k]), h);
      for (int j = 0; j < 3; ++j) {
        const double ds =
            0.5 * (darc((k + 2) % 3, j) + darc(k, j) - darc((k + 1) % 3, j));
        jac(e, t.edge_at(hex, j)) += weight * ds;
      }
    }
  }
  return jac;
}

double flipped_length(const IdealTriangulation& t, const Metric& m, int e) {
  validate(t, m);
  if (e < 0 || e >= t.edge_count()) throw DomainError("edge index out of range");
  if (t.self_glued(e)) throw SelfGluedEdge(e);
  const auto first = facing_perpendicular(t, m, t.edge(e).sides[0]);
  const auto second = facing_perpendicular(t, m, t.edge(e).sides[1]);
  // The gluing reverses orientation, so A_k of one side meets the far end of
  // the other; t is the gap between the two feet along e.
  const double gap = m.lengths[e] - first.from_a - second.from_a;
  const double half_sum = std::sinh(0.5 * (first.distance + second.distance));
  const double half_gap = std::sinh(0.5 * gap);
  // sinh^2(D/2) = sinh^2((d1+d2)/2) + sinh d1 sinh d2 sinh^2(t/2).
  const double q = half_sum * half_sum +
                   std::sinh(first.distance) * std::sinh(second.distance) * half_gap * half_gap;
  const double length = 2.0 * std::asinh(std::sqrt(q));
  if (!std::isfinite(length) || !(length > 0.0)) {
    throw NumericalFailure("flip of edge " + std::to_string(e) + " gives length " +
                           std::to_string(length));
  }
  return length;
}

FlipResult flip_geometric(const IdealTriangulation& t, const Metric& m, int e) {
  const double length = flipped_length(t, m, e);
  FlipResult out{surface::combinatorial_flip(t, e), m};
  out.metric.lengths[e] = length;
  return out;
}

}  // namespace teichcells::metric
