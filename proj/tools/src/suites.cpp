#include "teichcells/cli/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "teichcells/bundled.hpp"
#include "teichcells/cli/sampling.hpp"
#include "teichcells/errors.hpp"
#include "teichcells/hypgeom.hpp"
#include "teichcells/inverse.hpp"

namespace teichcells::cli {

namespace {

using hypgeom::HexagonGeometry;
using hypgeom::minkowski;
using metric::Metric;
using surface::IdealTriangulation;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::array<double, 5> kSignHs{0.0, 0.5, 1.0, 2.0, 3.5};
constexpr std::array<double, 3> kIntegerHs{0.0, 1.0, 2.0};

// Stream ids keep every check's samples fixed whichever suite runs it.
enum Stream : std::uint64_t {
  kHexagons = 1,
  kIsometries,
  kIncircles,
  kGaps,
  kSigns,
  kPsiTrips,
  kDoubleFlips,
  kBoundary,
  kTermination,
  kSpine,
  kPiMetric,
  kPiPoint,
  kCompletion,
  kConvexity,
  kMembership,
  kPerturbation,
  kWalls,
  kInjectivity,
};

std::string format(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

// Accumulates the worst error of a check and the first failure message.
class Tracker {
 public:
  Tracker(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  void sample() { ++result_.samples; }

  void observe(double error, const std::string& where) {
    result_.worst = std::max(result_.worst, std::isnan(error) ? kInf : error);
    if (!(error <= result_.tolerance)) fail(where + ": error " + format(error));
  }

  void require(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }

  void fail(const std::string& what) {
    ++failures_;
    if (first_failure_.empty()) first_failure_ = what;
  }

  void fail_worst(const std::string& what) {
    result_.worst = kInf;
    fail(what);
  }

  void note(const std::string& text) { notes_.push_back(text); }

  CheckResult finish() {
    result_.passed = failures_ == 0 && result_.samples > 0;
    if (result_.samples == 0) notes_.insert(notes_.begin(), "no samples");
    if (failures_ > 0) {
      notes_.insert(notes_.begin(),
                    std::to_string(failures_) + " failures, first: " + first_failure_);
    }
    for (std::size_t i = 0; i < notes_.size(); ++i) {
      result_.detail += (i ? "; " : "") + notes_[i];
    }
    return result_;
  }

 private:
  CheckResult result_;
  int failures_ = 0;
  std::string first_failure_;
  std::vector<std::string> notes_;
};

// Runs one sample, turning any exception into a recorded failure.
template <typename F>
void guarded(Tracker& tr, const std::string& where, F&& body) {
  try {
    body();
  } catch (const std::exception& err) {
    tr.fail_worst(where + ": " + err.what());
  }
}

std::string where(const std::string& surface, int k) { return surface + " #" + std::to_string(k); }

std::map<int, double> weights_by_edge(const delaunay::ArcComplexPoint& p) {
  std::map<int, double> out;
  const auto kept = p.decomposition.kept_edges();
  for (std::size_t i = 0; i < kept.size(); ++i) out[kept[i]] = p.weights[i];
  return out;
}

double point_error(const delaunay::ArcComplexPoint& a, const delaunay::ArcComplexPoint& b) {
  const auto cmp = delaunay::compare_points(a, b);
  if (!cmp.same_cells) return kInf;
  return std::max(cmp.weight_error, cmp.scale_error / std::max(1.0, a.scale));
}

std::vector<int> flippable_edges(const IdealTriangulation& t) {
  std::vector<int> out;
  for (int e = 0; e < t.edge_count(); ++e) {
    if (!t.self_glued(e)) out.push_back(e);
  }
  return out;
}

std::vector<double> sorted_boundary(const IdealTriangulation& t, const Metric& m) {
  auto lengths = metric::boundary_lengths(t, m);
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

// Draws hexagons until `count` of them have an incircle.
std::vector<HexagonGeometry> hexagons_with_incircle(int count, Rng& rng, int& rejected) {
  std::vector<HexagonGeometry> out;
  rejected = 0;
  while (static_cast<int>(out.size()) < count && rejected < 100 * std::max(count, 1)) {
    auto hex = hypgeom::develop_hexagon(sample_hexagon(rng));
    try {
      hypgeom::incircle(hex);
      out.push_back(std::move(hex));
    } catch (const NoIncircle&) {
      ++rejected;
    }
  }
  return out;
}

double sinh_distance(const hypgeom::HPoint& p, const hypgeom::OrientedGeodesic& g) {
  return std::abs(minkowski(p.coords, g.normal));
}

}  // namespace

namespace checks {

CheckResult hexagon_development(int count, std::uint64_t seed) {
  Tracker tr("hexagon.development", 1e-9);
  Rng rng(stream_seed(seed, kHexagons));
  for (int k = 0; k < count; ++k) {
    const auto x = sample_hexagon(rng);
    tr.sample();
    guarded(tr, "hexagon #" + std::to_string(k), [&] {
      const auto hex = hypgeom::develop_hexagon(x);
      const auto opposite = hypgeom::solve_hexagon(x[0], x[1], x[2]);
      double err = 0.0;
      for (int j = 0; j < 6; ++j) {
        const double expected =
            j % 2 == 0 ? opposite[(j / 2 + 2) % 3] : x[((j + 1) / 2) % 3];
        const auto& v = hex.vertices[j];
        const auto& w = hex.vertices[(j + 1) % 6];
        err = std::max(err, std::abs(hypgeom::point_distance(v, w) - expected));
        err = std::max(err, std::abs(minkowski(v.coords, v.coords) + 1.0));
        // Right angles, and every vertex of side j on side j's geodesic.
        err = std::max(err, std::abs(minkowski(hex.sides[j].normal, hex.sides[(j + 1) % 6].normal)));
        err = std::max(err, std::asinh(sinh_distance(v, hex.sides[j])));
        err = std::max(err, std::asinh(sinh_distance(w, hex.sides[j])));
        // Interior on the positive side of every side.
        for (const auto& u : hex.vertices) {
          err = std::max(err, -hex.sides[j].signed_distance(u));
        }
      }
      tr.observe(err, "hexagon #" + std::to_string(k));
    });
  }
  return tr.finish();
}

CheckResult isometry_invariance(int count, std::uint64_t seed) {
  Tracker tr("hexagon.isometry_invariance", 1e-10);
  Rng rng(stream_seed(seed, kIsometries));
  for (int k = 0; k < count; ++k) {
    const auto x = sample_hexagon(rng);
    const auto iso = hypgeom::Isometry::rotation(rng.uniform(0.0, 2.0 * std::numbers::pi))
                         .then(hypgeom::Isometry::boost(rng.uniform(0.0, 1.0)))
                         .then(hypgeom::Isometry::rotation(rng.uniform(0.0, 2.0 * std::numbers::pi)));
    tr.sample();
    guarded(tr, "hexagon #" + std::to_string(k), [&] {
      const auto hex = hypgeom::develop_hexagon(x);
      const auto moved = hex.transformed(iso);
      double err = 0.0;
      for (int i = 0; i < 6; ++i) {
        for (int j = i + 1; j < 6; ++j) {
          err = std::max(err, std::abs(hypgeom::point_distance(hex.vertices[i], hex.vertices[j]) -
                                       hypgeom::point_distance(moved.vertices[i], moved.vertices[j])));
        }
      }
      tr.observe(err, "hexagon #" + std::to_string(k));
    });
  }
  return tr.finish();
}

CheckResult incircle_tangency(int count, std::uint64_t seed) {
  Tracker tr("hexagon.incircle_tangency", 1e-9);
  Rng rng(stream_seed(seed, kIncircles));
  int rejected = 0;
  const auto hexes = hexagons_with_incircle(count, rng, rejected);
  for (std::size_t k = 0; k < hexes.size(); ++k) {
    tr.sample();
    guarded(tr, "hexagon #" + std::to_string(k), [&] {
      const auto& hex = hexes[k];
      const auto c = hypgeom::incircle(hex);
      const double sinh_r = std::sinh(c.radius);
      double err = 0.0;
      for (int i = 0; i < 3; ++i) {
        const auto& g = hex.arc_geodesic(i);
        err = std::max(err, std::abs(sinh_distance(c.center, g) - sinh_r) / std::max(1.0, sinh_r));
        err = std::max(err, std::asinh(sinh_distance(c.tangent_points[i], g)));
        err = std::max(err, std::abs(hypgeom::point_distance(c.center, c.tangent_points[i]) - c.radius));
      }
      tr.observe(err, "hexagon #" + std::to_string(k));
    });
  }
  tr.note(std::to_string(rejected) + " draws without an incircle skipped");
  return tr.finish();
}

CheckResult gap_identity(int count, std::uint64_t seed) {
  Tracker tr("lemma.gap_identity", 1e-7);
  Rng rng(stream_seed(seed, kGaps));
  int rejected = 0;
  const auto hexes = hexagons_with_incircle(count, rng, rejected);
  std::array<int, 3> signs{};
  for (std::size_t k = 0; k < hexes.size(); ++k) {
    tr.sample();
    const std::string at = "hexagon #" + std::to_string(k);
    guarded(tr, at, [&] {
      const auto& hex = hexes[k];
      const auto c = hypgeom::incircle(hex);
      double err = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double gap = hypgeom::signed_tangent_gap(hex, c, i);
        const double excess = hypgeom::half_arc_excess(hex.arc_sides, i);
        err = std::max(err, std::abs(2.0 * gap - 2.0 * excess));
        // The centre lies beyond slot i+1 exactly when the excess is negative.
        const double side = hex.slot_geodesic((i + 1) % 3).signed_distance(c.center);
        if (std::abs(excess) > 1e-9 && std::abs(side) > 1e-9) {
          tr.require((side > 0.0) == (excess > 0.0), at + ": centre on the wrong side of slot " +
                                                         std::to_string((i + 1) % 3));
        }
        ++signs[excess > 1e-9 ? 0 : excess < -1e-9 ? 2 : 1];
      }
      tr.observe(err, at);
    });
  }
  tr.note(std::to_string(rejected) + " draws without an incircle skipped");
  tr.note("gaps positive/zero/negative: " + std::to_string(signs[0]) + "/" +
          std::to_string(signs[1]) + "/" + std::to_string(signs[2]));
  return tr.finish();
}

CheckResult gap_cases() {
  Tracker tr("lemma.gap_cases", 1e-7);
  for (double target : {0.4, 0.0, -0.4}) {
    tr.sample();
    const std::string at = "gap " + format(target);
    guarded(tr, at, [&] {
      const auto hex = hypgeom::develop_hexagon(hypgeom::hexagon_with_gap(target));
      const auto c = hypgeom::incircle(hex);
      const double gap = hypgeom::signed_tangent_gap(hex, c, 0);
      const double side = hex.slot_geodesic(1).signed_distance(c.center);
      tr.observe(std::abs(gap - target), at);
      if (target > 0.0) tr.require(side > 1e-7, at + ": centre not inside slot 1");
      if (target < 0.0) tr.require(side < -1e-7, at + ": centre not beyond slot 1");
      if (target == 0.0) tr.observe(std::abs(side), at + " centre off slot 1");
    });
  }
  return tr.finish();
}

CheckResult tangent_equality(int count, std::uint64_t seed) {
  Tracker tr("lemma.tangent_equality", 1e-8);
  Rng rng(stream_seed(seed, kGaps));
  int rejected = 0;
  const auto hexes = hexagons_with_incircle(count, rng, rejected);
  for (std::size_t k = 0; k < hexes.size(); ++k) {
    tr.sample();
    guarded(tr, "hexagon #" + std::to_string(k), [&] {
      const auto& hex = hexes[k];
      const auto c = hypgeom::incircle(hex);
      double err = 0.0;
      for (int j = 0; j < 3; ++j) {
        const int next = (j + 1) % 3;
        err = std::max(err, std::abs(hypgeom::point_distance(c.tangent_points[j], hex.b(j)) -
                                     hypgeom::point_distance(c.tangent_points[next], hex.a(next))));
      }
      tr.observe(err, "hexagon #" + std::to_string(k));
    });
  }
  return tr.finish();
}

CheckResult sign_h_independence(int per_surface, std::uint64_t seed) {
  // Error = number of disagreements, so the tolerance is zero.
  Tracker tr("cells.h_independence", 0.0);
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t] = surfaces[s];
    Rng rng(stream_seed(seed, kSigns * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      const auto m = sample_metric(t, rng);
      tr.sample();
      guarded(tr, where(name, k), [&] {
        double mismatches = 0.0;
        std::vector<delaunay::ArcComplexPoint> points;
        for (double h : kSignHs) points.push_back(delaunay::pi_map(t, m, h).point);
        for (std::size_t i = 0; i < points.size(); ++i) {
          for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (!delaunay::compare_points(points[i], points[j]).same_cells) mismatches += 1.0;
          }
        }
        const auto base = metric::psi(t, m, 0.0).values;
        for (double h : kSignHs) {
          const auto values = metric::psi(t, m, h).values;
          for (int e = 0; e < t.edge_count(); ++e) {
            if (std::abs(base[e]) > 1e-12 && (values[e] > 0.0) != (base[e] > 0.0)) mismatches += 1.0;
          }
        }
        tr.observe(mismatches, where(name, k) + " sign or cell mismatches");
      });
    }
  }
  return tr.finish();
}

CheckResult psi_round_trip(int per_surface, std::uint64_t seed) {
  Tracker tr("psi.round_trip", 1e-7);
  double worst_residual = 0.0;
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t] = surfaces[s];
    Rng rng(stream_seed(seed, kPsiTrips * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      const auto m = sample_metric(t, rng);
      for (double h : kIntegerHs) {
        tr.sample();
        const std::string at = where(name, k) + " h=" + format(h);
        guarded(tr, at, [&] {
          const auto solved = inverse::solve_metric(t, metric::psi(t, m, h).values, h);
          double err = 0.0;
          for (int e = 0; e < t.edge_count(); ++e) {
            err = std::max(err, std::abs(solved.metric.lengths[e] - m.lengths[e]));
          }
          worst_residual = std::max(worst_residual, solved.residual);
          tr.require(solved.residual <= 1e-9, at + ": residual " + format(solved.residual));
          tr.observe(err, at);
        });
      }
    }
  }
  tr.note("worst residual " + format(worst_residual));
  return tr.finish();
}

CheckResult quadrature_closed_forms() {
  Tracker tr("psi.quadrature", 1e-12);
  const std::array<std::function<double(double)>, 3> closed{
      [](double t) { return t; },
      [](double t) { return std::sinh(t); },
      [](double t) { return 0.5 * (t + std::sinh(t) * std::cosh(t)); },
  };
  for (int h = 0; h < 3; ++h) {
    for (int i = 0; i <= 400; ++i) {
      const double t = -5.0 + 10.0 * i / 400.0;
      const double exact = closed[h](t);
      const double scale = std::max(std::abs(exact), 1e-300);
      tr.sample();
      const std::string at = "h=" + std::to_string(h) + " t=" + format(t);
      if (exact == 0.0) {
        tr.observe(std::abs(metric::F_quadrature(t, h)) + std::abs(metric::F(t, h)), at);
        continue;
      }
      tr.observe(std::abs(metric::F_quadrature(t, h) - exact) / scale, at + " quadrature");
      tr.observe(std::abs(metric::F(t, h) - exact) / scale, at + " closed form");
    }
  }
  return tr.finish();
}

CheckResult regular_torus_psi() {
  Tracker tr("psi.regular_torus", 1e-6);
  const auto t = bundled::one_holed_torus();
  const Metric m{{std::acosh(2.0), std::acosh(2.0), std::acosh(2.0)}};
  const std::array<double, 3> expected{1.3169579, 1.4142136, 1.5245043};
  for (int h = 0; h < 3; ++h) {
    tr.sample();
    const auto values = metric::psi(t, m, h).values;
    for (double v : values) tr.observe(std::abs(v - expected[h]), "h=" + std::to_string(h));
  }
  return tr.finish();
}

CheckResult double_flip(int per_surface, std::uint64_t seed) {
  Tracker tr("flip.double", 1e-9);
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t] = surfaces[s];
    Rng rng(stream_seed(seed, kDoubleFlips * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      const auto m = sample_metric(t, rng);
      for (int e : flippable_edges(t)) {
        tr.sample();
        const std::string at = where(name, k) + " edge " + std::to_string(e);
        guarded(tr, at, [&] {
          const auto once = metric::flip_geometric(t, m, e);
          const auto twice = metric::flip_geometric(once.triangulation, once.metric, e);
          tr.require(surface::isomorphic(twice.triangulation, t).has_value(),
                     at + ": double flip changed the combinatorics");
          double err = 0.0;
          for (int f = 0; f < t.edge_count(); ++f) {
            err = std::max(err, std::abs(twice.metric.lengths[f] - m.lengths[f]));
          }
          tr.observe(err, at);
        });
      }
    }
  }
  return tr.finish();
}

CheckResult flip_boundary_lengths(int per_surface, std::uint64_t seed) {
  Tracker tr("flip.boundary_lengths", 1e-9);
  constexpr int kFlipsPerSample = 10;
  // Random flip walks on small surfaces grow lengths geometrically; walks stop
  // well before cosh overflows.
  constexpr double kLengthCap = 100.0;
  double drift = 0.0;
  int truncated = 0;
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t0] = surfaces[s];
    Rng rng(stream_seed(seed, kBoundary * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      tr.sample();
      auto m = sample_metric(t0, rng);
      guarded(tr, where(name, k), [&] {
        auto t = t0;
        const auto start = sorted_boundary(t, m);
        for (int i = 0; i < kFlipsPerSample; ++i) {
          const auto edges = flippable_edges(t);
          if (edges.empty()) break;
          if (*std::max_element(m.lengths.begin(), m.lengths.end()) > kLengthCap) {
            ++truncated;
            break;
          }
          const auto before = sorted_boundary(t, m);
          auto next = metric::flip_geometric(t, m, edges[rng.below(static_cast<int>(edges.size()))]);
          t = std::move(next.triangulation);
          m = std::move(next.metric);
          const auto after = sorted_boundary(t, m);
          tr.require(after.size() == before.size(), where(name, k) + ": boundary count changed");
          double err = 0.0;
          for (std::size_t b = 0; b < std::min(before.size(), after.size()); ++b) {
            err = std::max(err, std::abs(after[b] - before[b]));
            drift = std::max(drift, std::abs(after[b] - start[b]));
          }
          tr.observe(err, where(name, k) + " flip " + std::to_string(i));
        }
      });
    }
  }
  tr.note("drift after " + std::to_string(kFlipsPerSample) + " flips " + format(drift));
  tr.note(std::to_string(truncated) + " walks stopped at length " + format(kLengthCap));
  return tr.finish();
}

CheckResult delaunay_termination(int per_surface, std::uint64_t seed) {
  Tracker tr("delaunay.termination", 1e-9);
  std::size_t most_flips = 0;
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t0] = surfaces[s];
    Rng rng(stream_seed(seed, kTermination * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      tr.sample();
      // Alternate plain samples with wider ones seen through a scrambled chart.
      const bool wide = k % 2 == 1;
      auto m = sample_metric(t0, rng, wide ? 2.0 : kMetricLogSpread);
      auto t = t0;
      guarded(tr, where(name, k), [&] {
        for (int i = 0; wide && i < 6; ++i) {
          const auto edges = flippable_edges(t);
          auto next = metric::flip_geometric(t, m, edges[rng.below(static_cast<int>(edges.size()))]);
          t = std::move(next.triangulation);
          m = std::move(next.metric);
        }
        const auto result = delaunay::make_delaunay(t, m);
        most_flips = std::max(most_flips, result.flips.size());
        tr.require(static_cast<int>(result.flips.size()) <= delaunay::kDefaultFlipCap,
                   where(name, k) + ": flip cap exceeded");
        tr.observe(std::max(0.0, -delaunay::min_psi0(result.triangulation, result.metric)),
                   where(name, k) + " final min psi_0");
      });
    }
  }
  tr.note("most flips " + std::to_string(most_flips));
  return tr.finish();
}

CheckResult spine_structure(int per_surface, std::uint64_t seed) {
  Tracker tr("delaunay.spine", 1e-9);
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t] = surfaces[s];
    const int chi = surface::surface_invariants(t).chi;
    Rng rng(stream_seed(seed, kSpine * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      const auto m = sample_metric(t, rng);
      tr.sample();
      const std::string at = where(name, k);
      guarded(tr, at, [&] {
        const auto pi = delaunay::pi_map(t, m, 0.0);
        const auto& dec = pi.point.decomposition;
        const auto sp = delaunay::spine(dec, pi.metric);
        tr.require(sp.euler_characteristic() == chi, at + ": spine Euler characteristic");
        std::vector<int> degree(static_cast<std::size_t>(sp.node_count), 0);
        for (const auto& link : sp.links) {
          ++degree[link.cells[0]];
          ++degree[link.cells[1]];
        }
        for (int c = 0; c < sp.node_count; ++c) {
          tr.require(degree[c] == sp.degrees[c] && sp.degrees[c] == dec.cells()[c].side_count(),
                     at + ": node degree differs from cell side count");
          tr.require(sp.radii[c] > 0.0, at + ": non-positive incircle radius");
        }
        // The two gaps at a kept edge add up to psi_0 of that edge.
        const auto psi0 = metric::psi(pi.triangulation, pi.metric, 0.0).values;
        double err = 0.0;
        for (const auto& link : sp.links) {
          err = std::max(err, std::abs(link.gaps[0] + link.gaps[1] - psi0[link.edge]));
        }
        tr.observe(err, at);
      });
    }
  }
  return tr.finish();
}

CheckResult pi_round_trip_metric(int per_surface, std::uint64_t seed) {
  Tracker tr("pi.round_trip_metric", 1e-7);
  double metric_error = 0.0;
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t] = surfaces[s];
    Rng rng(stream_seed(seed, kPiMetric * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      const auto m = sample_metric(t, rng);
      const double h = kIntegerHs[k % 3];
      tr.sample();
      const std::string at = where(name, k);
      guarded(tr, at, [&] {
        const auto forward = delaunay::pi_map(t, m, h);
        const auto back = inverse::pi_inverse(forward.point);
        const auto again = delaunay::pi_map(back.triangulation, back.metric, h);
        tr.observe(point_error(forward.point, again.point), at);
        if (forward.point.decomposition.deleted().empty()) {
          for (int e = 0; e < t.edge_count(); ++e) {
            metric_error = std::max(metric_error,
                                    std::abs(back.metric.lengths[e] - forward.metric.lengths[e]));
          }
        }
      });
    }
  }
  tr.observe(metric_error, "recovered Delaunay lengths");
  tr.note("worst recovered length error " + format(metric_error));
  return tr.finish();
}

CheckResult pi_round_trip_point(int per_surface, std::uint64_t seed) {
  Tracker tr("pi.round_trip_point", 1e-7);
  std::array<int, 3> by_padding{};
  double zero_error = 0.0;
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t0] = surfaces[s];
    Rng rng(stream_seed(seed, kPiPoint * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      const auto t = random_flips(t0, rng, 6);
      const auto deleted = random_forest(t, rng, k % 3);
      const double h = std::array<double, 4>{0.0, 1.0, 2.0, 0.5}[k % 4];
      const auto p = random_point(t, deleted, rng, h);
      tr.sample();
      const std::string at = where(name, k);
      guarded(tr, at, [&] {
        const auto back = inverse::pi_inverse(p);
        const auto values = metric::psi(back.triangulation, back.metric, h).values;
        for (int e : back.added) zero_error = std::max(zero_error, std::abs(values[e]));
        const auto again = delaunay::pi_map(back.triangulation, back.metric, h);
        tr.observe(point_error(p, again.point), at);
        ++by_padding[deleted.size()];
      });
    }
  }
  if (zero_error > 1e-8) tr.fail("padded diagonal psi " + format(zero_error) + " above 1e-8");
  tr.require(by_padding[1] > 0 && by_padding[2] > 0, "no points with one and two padded diagonals");
  tr.note("points with 0/1/2 padded diagonals: " + std::to_string(by_padding[0]) + "/" +
          std::to_string(by_padding[1]) + "/" + std::to_string(by_padding[2]));
  tr.note("worst psi on padded diagonals " + format(zero_error));
  return tr.finish();
}

CheckResult completion_independence(int per_surface, std::uint64_t seed) {
  Tracker tr("pi.completion_independence", 1e-7);
  int distinct = 0;
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t0] = surfaces[s];
    Rng rng(stream_seed(seed, kCompletion * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      const auto t = random_flips(t0, rng, 6);
      const auto deleted = random_forest(t, rng, 1 + k % 2);
      const double h = kIntegerHs[k % 3];
      const auto p = random_point(t, deleted, rng, h);
      tr.sample();
      const std::string at = where(name, k);
      guarded(tr, at, [&] {
        const auto first = inverse::pi_inverse(p, surface::FanAnchor{0});
        const auto second = inverse::pi_inverse(p, surface::FanAnchor{1});
        bool differ = false;
        for (int e = 0; e < first.triangulation.edge_count(); ++e) {
          const auto& a = first.triangulation.edge(e).sides;
          const auto& b = second.triangulation.edge(e).sides;
          differ = differ || a[0] != b[0] || a[1] != b[1];
        }
        distinct += differ ? 1 : 0;
        tr.observe(point_error(delaunay::pi_map(first.triangulation, first.metric, h).point,
                               delaunay::pi_map(second.triangulation, second.metric, h).point),
                   at);
      });
    }
  }
  tr.require(distinct > 0, "no sample produced two different completions");
  tr.note(std::to_string(distinct) + " samples with different completions");
  return tr.finish();
}

CheckResult pi_injectivity(int per_surface, std::uint64_t seed) {
  // Error = 1 when two metrics with different psi_0 in one Delaunay chart
  // map to the same point.
  Tracker tr("pi.injectivity", 0.0);
  constexpr double kDistinct = 1e-9;
  constexpr double kLogShift = 0.3;
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t] = surfaces[s];
    Rng rng(stream_seed(seed, kInjectivity * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      const auto m = sample_metric(t, rng);
      std::vector<double> shift(static_cast<std::size_t>(t.edge_count()));
      for (double& v : shift) v = std::exp(rng.uniform(-kLogShift, kLogShift));
      const double h = kIntegerHs[k % 3];
      tr.sample();
      const std::string at = where(name, k);
      guarded(tr, at, [&] {
        const auto chart = delaunay::make_delaunay(t, m);
        auto target = metric::psi(chart.triangulation, chart.metric, 0.0).values;
        for (std::size_t e = 0; e < target.size(); ++e) target[e] *= shift[e];
        const auto other = inverse::solve_metric(chart.triangulation, target, 0.0);
        const auto a = delaunay::pi_map(chart.triangulation, chart.metric, h);
        const auto b = delaunay::pi_map(chart.triangulation, other.metric, h);
        tr.require(a.flips.empty() && b.flips.empty(), at + ": metrics left the common chart");
        tr.observe(delaunay::points_agree(a.point, b.point, kDistinct) ? 1.0 : 0.0, at);
      });
    }
  }
  return tr.finish();
}

CheckResult convexity(int per_surface, std::uint64_t seed) {
  Tracker tr("polytope.convexity", 1e-9);
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t] = surfaces[s];
    Rng rng(stream_seed(seed, kConvexity * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      const double h = kIntegerHs[k % 3];
      const auto first = metric::psi(t, sample_metric(t, rng), h).values;
      const auto second = metric::psi(t, sample_metric(t, rng), h).values;
      for (double lambda : {0.25, 0.5, 0.75}) {
        tr.sample();
        const std::string at = where(name, k) + " lambda=" + format(lambda);
        guarded(tr, at, [&] {
          std::vector<double> target(first.size());
          for (std::size_t e = 0; e < target.size(); ++e) {
            target[e] = lambda * first[e] + (1.0 - lambda) * second[e];
          }
          tr.require(inverse::polytope_contains(t, target).inside, at + ": membership rejected");
          tr.observe(inverse::solve_metric(t, target, h).residual, at);
        });
      }
    }
  }
  return tr.finish();
}

CheckResult membership_soundness(int per_surface, std::uint64_t seed) {
  // Error = psi residual of solved targets inside the polytope.
  Tracker tr("polytope.membership", 1e-9);
  int inside = 0;
  int outside = 0;
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t] = surfaces[s];
    Rng rng(stream_seed(seed, kMembership * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      std::vector<double> z(static_cast<std::size_t>(t.edge_count()));
      for (double& v : z) v = rng.uniform(-1.0, 2.0);
      const double h = kIntegerHs[k % 3];
      tr.sample();
      const std::string at = where(name, k);
      guarded(tr, at, [&] {
        const auto member = inverse::polytope_contains(t, z);
        if (member.inside) {
          ++inside;
          const auto solved = inverse::solve_metric(t, z, h);
          const auto achieved = metric::psi(t, solved.metric, h).values;
          tr.require(inverse::polytope_contains(t, achieved).inside,
                     at + ": achieved psi outside the polytope");
          tr.observe(solved.residual, at);
          return;
        }
        ++outside;
        tr.require(member.witness.has_value(), at + ": rejection without a witness");
        if (!member.witness) return;
        const auto& cycle = *member.witness;
        double sum = 0.0;
        const int n = static_cast<int>(cycle.edges.size());
        for (int i = 0; i < n; ++i) {
          sum += z[cycle.edges[i]];
          const auto& sides = t.edge(cycle.edges[i]).sides;
          const int before = cycle.hexagons[(i + n - 1) % n];
          const int after = cycle.hexagons[i];
          const bool joins = (sides[0].hexagon == before && sides[1].hexagon == after) ||
                             (sides[1].hexagon == before && sides[0].hexagon == after);
          tr.require(joins, at + ": witness is not an edge cycle");
          const int next = cycle.edges[(i + 1) % n];
          tr.require(n == 1 || next != cycle.edges[i] || t.self_glued(next),
                     at + ": witness turns back through an edge");
        }
        tr.require(sum <= inverse::kMembershipMargin, at + ": witness sum is positive");
        bool refused = false;
        try {
          inverse::solve_metric(t, z, h);
        } catch (const InvalidTarget&) {
          refused = true;
        }
        tr.require(refused, at + ": solver accepted a target outside the polytope");
      });
    }
  }
  tr.require(inside > 0 && outside > 0, "targets did not land on both sides");
  tr.note("inside/outside: " + std::to_string(inside) + "/" + std::to_string(outside));
  return tr.finish();
}

CheckResult perturbation_stability(int per_surface, std::uint64_t seed) {
  Tracker tr("continuity.perturbation", 1e-2);
  constexpr double kStableMargin = 1e-2;
  constexpr double kLengthNoise = 1e-4;
  int skipped = 0;
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t] = surfaces[s];
    Rng rng(stream_seed(seed, kPerturbation * 100 + s));
    for (int k = 0; k < per_surface; ++k) {
      const auto m = sample_metric(t, rng);
      auto moved = m;
      for (double& l : moved.lengths) l += rng.uniform(-kLengthNoise, kLengthNoise);
      const double h = kIntegerHs[k % 3];
      const std::string at = where(name, k);
      guarded(tr, at, [&] {
        const auto base = delaunay::pi_map(t, m, h);
        const auto psi0 = metric::psi(base.triangulation, base.metric, 0.0).values;
        const double margin = *std::min_element(psi0.begin(), psi0.end(), [](double a, double b) {
          return std::abs(a) < std::abs(b);
        });
        if (std::abs(margin) < kStableMargin) {
          ++skipped;
          return;
        }
        tr.sample();
        const auto cmp = delaunay::compare_points(base.point, delaunay::pi_map(t, moved, h).point);
        tr.require(cmp.same_cells, at + ": perturbation changed the decomposition");
        tr.observe(cmp.weight_error, at);
      });
    }
  }
  tr.note(std::to_string(skipped) + " samples within " + format(kStableMargin) +
          " of a wall skipped");
  return tr.finish();
}

CheckResult wall_crossing(int per_surface, std::uint64_t seed) {
  Tracker tr("continuity.wall_crossing", 1e-6);
  constexpr double kStep = 1e-6;
  double worst_jump = 0.0;
  int skipped = 0;
  const auto surfaces = bundled::all_surfaces();
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& [name, t] = surfaces[s];
    const auto edges = flippable_edges(t);
    Rng rng(stream_seed(seed, kWalls * 100 + s));
    for (int k = 0; k < per_surface && !edges.empty(); ++k) {
      const int e = edges[rng.below(static_cast<int>(edges.size()))];
      // Two in-image psi_0 targets that differ in sign only at e.
      std::vector<double> near(static_cast<std::size_t>(t.edge_count()));
      for (double& v : near) v = rng.uniform(0.5, 1.5);
      auto far = near;
      far[e] = -rng.uniform(0.1, 0.4);
      const std::string at = where(name, k) + " edge " + std::to_string(e);
      guarded(tr, at, [&] {
        const auto m0 = inverse::solve_metric(t, near, 0.0).metric;
        const auto m1 = inverse::solve_metric(t, far, 0.0).metric;
        auto along = [&](double lambda) {
          Metric m;
          for (int f = 0; f < t.edge_count(); ++f) {
            m.lengths.push_back(std::exp((1.0 - lambda) * std::log(m0.lengths[f]) +
                                         lambda * std::log(m1.lengths[f])));
          }
          return m;
        };
        double lo = 0.0;
        double hi = 1.0;
        double crossing = 0.0;
        double value = near[e];
        for (int it = 0; it < 200 && std::abs(value) > 1e-12 && hi - lo > 1e-16; ++it) {
          crossing = 0.5 * (lo + hi);
          value = metric::psi(t, along(crossing), 0.0).values[e];
          (value > 0.0 ? lo : hi) = crossing;
        }
        const auto at_wall = along(crossing);
        const auto psi0 = metric::psi(t, at_wall, 0.0).values;
        for (int f = 0; f < t.edge_count(); ++f) {
          if (f != e && psi0[f] <= 1e-3) {
            ++skipped;
            return;
          }
        }
        tr.sample();
        tr.observe(std::abs(psi0[e]), at);

        const double h = kIntegerHs[k % 3];
        const auto before = delaunay::pi_map(t, along(crossing - kStep), h);
        const auto wall = delaunay::pi_map(t, at_wall, h);
        const auto after = delaunay::pi_map(t, along(crossing + kStep), h);
        tr.require(before.flips.empty(), at + ": flips before the wall");
        tr.require(wall.point.decomposition.is_deleted(e), at + ": edge kept at the wall");
        tr.require(after.flips == std::vector<int>{e}, at + ": expected one flip past the wall");

        const auto w_wall = weights_by_edge(wall.point);
        double jump = std::abs(before.point.scale - after.point.scale) / wall.point.scale;
        for (const auto* side : {&before, &after}) {
          for (const auto& [f, w] : weights_by_edge(side->point)) {
            const auto it = w_wall.find(f);
            jump = std::max(jump, std::abs(w - (it == w_wall.end() ? 0.0 : it->second)));
          }
        }
        worst_jump = std::max(worst_jump, jump);
        tr.require(jump <= 1e-4, at + ": pi jumps by " + format(jump) + " across the wall");
      });
    }
  }
  tr.note("worst weight or scale jump across a wall " + format(worst_jump));
  tr.note(std::to_string(skipped) + " paths meeting another wall skipped");
  return tr.finish();
}

}  // namespace checks

bool VerificationReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Json VerificationReport::to_json() const {
  Json list = Json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"passed", c.passed},
                    {"worst", std::isfinite(c.worst) ? Json(c.worst) : Json("inf")},
                    {"tolerance", c.tolerance},
                    {"samples", c.samples},
                    {"detail", c.detail}});
  }
  return {{"suite", suite},         {"samples", samples}, {"seed", seed},
          {"passed", passed()},     {"checks", list},     {"wall_seconds", wall_seconds}};
}

namespace {

using SuiteBody = std::function<std::vector<CheckResult>(int, std::uint64_t)>;

const std::vector<std::pair<std::string, SuiteBody>>& suite_table() {
  using namespace checks;
  static const std::vector<std::pair<std::string, SuiteBody>> table{
      {"hexagon",
       [](int n, std::uint64_t seed) {
         return std::vector{hexagon_development(n, seed), isometry_invariance(n, seed),
                            incircle_tangency(n, seed)};
       }},
      {"lemma31",
       [](int n, std::uint64_t seed) {
         return std::vector{gap_identity(n, seed), gap_cases(), tangent_equality(n, seed)};
       }},
      {"sign", [](int n, std::uint64_t seed) { return std::vector{sign_h_independence(n, seed)}; }},
      {"roundtrip",
       [](int n, std::uint64_t seed) {
         return std::vector{quadrature_closed_forms(), regular_torus_psi(), psi_round_trip(n, seed),
                            pi_round_trip_metric(n, seed), pi_round_trip_point(n, seed)};
       }},
      {"delaunay",
       [](int n, std::uint64_t seed) {
         return std::vector{double_flip(n, seed), flip_boundary_lengths(n, seed),
                            delaunay_termination(n, seed), spine_structure(n, seed)};
       }},
      {"inverse",
       [](int n, std::uint64_t seed) {
         return std::vector{completion_independence(n, seed), pi_injectivity(n, seed),
                            convexity(n, seed), membership_soundness(n, seed)};
       }},
      {"continuity",
       [](int n, std::uint64_t seed) {
         return std::vector{perturbation_stability(n, seed), wall_crossing(n, seed)};
       }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, body] : suite_table()) out.push_back(name);
    out.push_back("all");
    return out;
  }();
  return names;
}

VerificationReport run_suite(const std::string& name, int samples, std::uint64_t seed) {
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
    throw UnknownSuite(name);
  }
  if (samples <= 0) throw DomainError("sample count must be positive");
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report{name, samples, seed, {}, 0.0};
  for (const auto& [suite, body] : suite_table()) {
    if (name != "all" && name != suite) continue;
    for (auto& check : body(samples, seed)) report.checks.push_back(std::move(check));
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace teichcells::cli
