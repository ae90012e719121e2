// Acceptance run: one PASS/FAIL line per criterion AC1..AC11, each combining
// the library's verification checks with reference computations from the
// test oracles. Exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "teichcells/bundled.hpp"
#include "teichcells/cli/sampling.hpp"
#include "teichcells/cli/suites.hpp"
#include "teichcells/errors.hpp"
#include "teichcells/hypgeom.hpp"
#include "teichcells/inverse.hpp"
#include "teichcells/metric.hpp"

namespace {

using namespace teichcells;
using cli::CheckResult;
using cli::Rng;

constexpr std::uint64_t kSeed = 7;
constexpr double kTotalLimitSeconds = 300.0;

// Tolerances, one per measured quantity.
constexpr double kDevelopTol = 1e-9;
constexpr double kGapTol = 1e-7;
constexpr double kTangentTol = 1e-8;
constexpr double kFlipTol = 1e-9;
constexpr double kMembershipTol = 0.0;
constexpr double kQuadratureTol = 1e-12;
constexpr double kConstantTol = 1e-6;

// Oracle streams, disjoint from the ones the suites use.
enum : std::uint64_t {
  kOracleHexagons = 9001,
  kOracleGaps,
  kOracleFlips,
  kOracleMembership,
};

// Accumulates one oracle comparison into a CheckResult.
class Probe {
 public:
  Probe(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  void observe(double error, const std::string& where) {
    ++result_.samples;
    if (std::isnan(error)) error = std::numeric_limits<double>::infinity();
    result_.worst = std::max(result_.worst, error);
    if (!(error <= result_.tolerance)) fail(where + ": error " + std::to_string(error));
  }

  void require(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }

  void note(const std::string& text) {
    notes_ += (notes_.empty() ? "" : "; ") + text;
  }

  CheckResult finish() {
    result_.passed = failures_ == 0 && result_.samples > 0;
    result_.detail = failures_ ? std::to_string(failures_) + " failures, first: " + first_ : "";
    if (!notes_.empty()) result_.detail += (result_.detail.empty() ? "" : "; ") + notes_;
    return result_;
  }

 private:
  void fail(const std::string& what) {
    if (failures_++ == 0) first_ = what;
  }

  CheckResult result_;
  int failures_ = 0;
  std::string first_;
  std::string notes_;
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit = 0.0;
  std::function<std::vector<CheckResult>()> run;
};

// AC1 oracle: re-measure the developed vertices with plain acosh distances
// and compare with the slot lengths and the textbook arc lengths.
CheckResult remeasured_hexagons(int count) {
  Probe p("oracle.hexagon_remeasure", kDevelopTol);
  Rng rng(cli::stream_seed(kSeed, kOracleHexagons));
  for (int k = 0; k < count; ++k) {
    const auto x = cli::sample_hexagon(rng);
    const auto hex = hypgeom::develop_hexagon(x);
    double err = 0.0;
    for (int j = 0; j < 6; ++j) {
      const double measured =
          oracle::distance(hex.vertices[j].coords, hex.vertices[(j + 1) % 6].coords);
      // sides[j]: arc j/2 for even j, slot (j+1)/2 for odd j.
      const int k3 = j / 2;
      const double expected =
          j % 2 == 0 ? oracle::facing_arc(x[(k3 + 2) % 3], x[k3], x[(k3 + 1) % 3])
                     : x[((j + 1) / 2) % 3];
      err = std::max(err, std::abs(measured - expected));
    }
    p.observe(err, "hexagon #" + std::to_string(k));
  }
  return p.finish();
}

// AC2 and AC3 oracles: Newton incircle of the turtle hexagon.
std::vector<CheckResult> turtle_gaps(int count) {
  Probe identity("oracle.gap_identity", kGapTol);
  Probe agreement("oracle.gap_vs_library", kGapTol);
  Probe tangents("oracle.tangent_equality", kTangentTol);
  Rng rng(cli::stream_seed(kSeed, kOracleGaps));
  int skipped = 0;
  for (int k = 0; k < count;) {
    const auto x = cli::sample_hexagon(rng);
    const auto hex = oracle::turtle_hexagon(x);
    const auto c = oracle::turtle_incircle(hex);
    if (!c.converged) {
      ++skipped;
      continue;
    }
    const std::string at = "hexagon #" + std::to_string(k++);
    const auto geometry = hypgeom::develop_hexagon(x);
    const auto circle = hypgeom::incircle(geometry);
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double arc_i = hex.lengths[2 * i + 1];
      const double arc_next = hex.lengths[(2 * i + 3) % 6];
      const double arc_far = hex.lengths[(2 * i + 5) % 6];
      const double gap = oracle::turtle_signed_gap(hex, c, i);
      e1 = std::max(e1, std::abs(2.0 * gap - (arc_i + arc_next - arc_far)));
      const double lib = hypgeom::signed_tangent_gap(geometry, circle, i);
      e2 = std::max(e2, std::abs(lib - gap));
      if (std::abs(gap) > 1e-9) {
        agreement.require((lib > 0.0) == (gap > 0.0), at + ": gap sign differs");
      }
      const auto pair = oracle::turtle_tangent_pair(hex, c, i);
      e3 = std::max(e3, std::abs(pair[0] - pair[1]));
    }
    identity.observe(e1, at);
    agreement.observe(e2, at);
    tangents.observe(e3, at);
  }
  identity.note(std::to_string(skipped) + " draws without an incircle skipped");

  // One constructed hexagon per case: centre inside, on, and beyond slot 1.
  for (double target : {0.4, 0.0, -0.3}) {
    const auto hex = oracle::turtle_hexagon(hypgeom::hexagon_with_gap(target));
    const auto c = oracle::turtle_incircle(hex);
    const std::string at = "constructed gap " + std::to_string(target);
    identity.require(c.converged, at + ": no incircle");
    const double gap = oracle::turtle_signed_gap(hex, c, 0);
    identity.observe(std::abs(gap - target), at);
    const double side = oracle::lorentz(c.center, hex.slot_normal(1));
    if (target != 0.0) identity.require((side > 0.0) == (target > 0.0), at + ": centre side");
  }
  return {identity.finish(), agreement.finish(), tangents.finish()};
}

// AC6 oracle: flipped lengths from the turtle development of the octagon.
CheckResult developed_flips(int per_surface) {
  Probe p("oracle.flip_length", kFlipTol);
  Rng rng(cli::stream_seed(kSeed, kOracleFlips));
  for (const auto& [name, t] : bundled::all_surfaces()) {
    for (int k = 0; k < per_surface; ++k) {
      const auto m = cli::sample_metric(t, rng);
      for (int e = 0; e < t.edge_count(); ++e) {
        if (t.self_glued(e)) continue;
        const double lib = metric::flipped_length(t, m, e);
        const double ref = oracle::developed_flip_length(t, m, e);
        p.observe(std::abs(lib - ref) / std::max(1.0, ref),
                  name + " #" + std::to_string(k) + " edge " + std::to_string(e));
      }
    }
  }
  return p.finish();
}

// AC9 oracle: membership against brute-force enumeration. On the torus and
// the four-holed sphere the simple cycles found by trying every edge subset
// decide membership; on genus two closed walks are enumerated directly.
std::vector<CheckResult> brute_force_membership(int per_surface) {
  std::vector<CheckResult> out;
  Rng rng(cli::stream_seed(kSeed, kOracleMembership));
  for (const auto& [name, t] : bundled::all_surfaces()) {
    const bool subsets = name == "one_holed_torus" || name == "four_holed_sphere";
    if (!subsets && name != "genus_two_one_boundary") continue;
    Probe p("oracle.membership." + name, kMembershipTol);
    const auto links = oracle::dual_links(t);
    const auto cycles = oracle::subset_cycles(t.hexagon_count(), links);
    if (name == "one_holed_torus") {
      p.require(cycles.size() == 3, "torus has " + std::to_string(cycles.size()) + " cycles");
    }
    int inside = 0;
    for (int k = 0; k < per_surface; ++k) {
      std::vector<double> z;
      for (int e = 0; e < t.edge_count(); ++e) z.push_back(rng.uniform(-1.0, 2.0));
      double best = std::numeric_limits<double>::infinity();
      if (subsets) {
        for (const auto& c : cycles) {
          double s = 0.0;
          for (int e : c) s += z[e];
          best = std::min(best, s);
        }
      } else {
        best = oracle::min_closed_walk(t.hexagon_count(), links, z, 12);
      }
      const bool expected = best > inverse::kMembershipMargin;
      const bool got = inverse::polytope_contains(t, z).inside;
      inside += got;
      p.observe(got == expected ? 0.0 : 1.0, name + " #" + std::to_string(k));
    }
    p.note(std::to_string(cycles.size()) + " simple cycles, " + std::to_string(inside) + "/" +
           std::to_string(per_surface) + " inside");
    p.require(inside > 0 && inside < per_surface, "targets on one side only");
    out.push_back(p.finish());
  }
  return out;
}

// AC11 oracle: F against the antiderivatives and the regular torus constants.
std::vector<CheckResult> closed_forms() {
  Probe f("oracle.F_closed_forms", kQuadratureTol);
  for (int h = 0; h < 3; ++h) {
    for (int i = 0; i <= 200; ++i) {
      const double t = -5.0 + 0.05 * i;
      const double exact = oracle::closed_form_F(t, h);
      const double scale = std::max(std::abs(exact), std::numeric_limits<double>::min());
      f.observe(std::abs(metric::F(t, h) - exact) / scale,
                "h=" + std::to_string(h) + " t=" + std::to_string(t));
      if (t != 0.0) {
        f.observe(std::abs(metric::F_quadrature(t, h) - exact) / scale,
                  "quadrature h=" + std::to_string(h) + " t=" + std::to_string(t));
      }
    }
  }

  Probe c("oracle.regular_torus", kConstantTol);
  const double expected[3] = {1.3169579, 1.4142136, 1.5245043};
  const double l = std::acosh(2.0);
  const auto t = bundled::one_holed_torus();
  for (int h = 0; h < 3; ++h) {
    c.observe(std::abs(oracle::regular_torus_psi(h) - expected[h]), "oracle h=" + std::to_string(h));
    for (double v : metric::psi(t, metric::Metric{{l, l, l}}, h).values) {
      c.observe(std::abs(v - expected[h]), "psi h=" + std::to_string(h));
    }
  }
  return {f.finish(), c.finish()};
}

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

int main() {
  using namespace teichcells::cli::checks;
  const std::vector<Criterion> criteria{
      {"AC1", "hexagon self-consistency", 10.0,
       [] {
         return std::vector{hexagon_development(1000, kSeed), isometry_invariance(1000, kSeed),
                            remeasured_hexagons(1000)};
       }},
      {"AC2", "signed tangent gap identity", 30.0,
       [] {
         auto out = std::vector{gap_identity(500, kSeed), gap_cases()};
         for (auto& c : turtle_gaps(500)) {
           if (c.name != "oracle.tangent_equality") out.push_back(std::move(c));
         }
         return out;
       }},
      {"AC3", "tangent equality", 30.0,
       [] {
         auto out = std::vector{tangent_equality(500, kSeed)};
         for (auto& c : turtle_gaps(500)) {
           if (c.name == "oracle.tangent_equality") out.push_back(std::move(c));
         }
         return out;
       }},
      {"AC4", "sign and cell structure independent of h", 120.0,
       [] { return std::vector{sign_h_independence(200, kSeed)}; }},
      {"AC5", "psi round trip", 120.0, [] { return std::vector{psi_round_trip(100, kSeed)}; }},
      {"AC6", "flip invariants and Delaunay termination", 120.0,
       [] {
         return std::vector{double_flip(200, kSeed), flip_boundary_lengths(200, kSeed),
                            delaunay_termination(200, kSeed), developed_flips(200)};
       }},
      {"AC7", "Pi round trips", 120.0,
       [] {
         return std::vector{pi_round_trip_metric(50, kSeed), pi_round_trip_point(50, kSeed)};
       }},
      {"AC8", "completion independence", 120.0,
       [] { return std::vector{completion_independence(50, kSeed)}; }},
      {"AC9", "convexity and membership", 120.0,
       [] {
         auto out = std::vector{convexity(50, kSeed), membership_soundness(200, kSeed)};
         for (auto& c : brute_force_membership(500)) out.push_back(std::move(c));
         return out;
       }},
      {"AC10", "continuity", 120.0,
       [] {
         return std::vector{perturbation_stability(100, kSeed), wall_crossing(50, kSeed)};
       }},
      {"AC11", "quadrature and regular torus constants", 10.0,
       [] {
         auto out = std::vector{quadrature_closed_forms(), regular_torus_psi()};
         for (auto& c : closed_forms()) out.push_back(std::move(c));
         return out;
       }},
  };

  const auto start = std::chrono::steady_clock::now();
  bool all = true;
  for (const auto& criterion : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> checks;
    std::string error;
    try {
      checks = criterion.run();
    } catch (const std::exception& err) {
      error = err.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool pass = error.empty() && !checks.empty() && seconds <= criterion.time_limit;
    double worst_ratio = 0.0;
    int samples = 0;
    for (const auto& c : checks) {
      pass = pass && c.passed;
      samples += c.samples;
      const double ratio = c.tolerance > 0.0 ? c.worst / c.tolerance : c.worst;
      worst_ratio = std::max(worst_ratio, ratio);
    }
    all = all && pass;
    std::printf("%s %s  %s  worst/tol=%s samples=%d time=%.1fs limit=%.0fs\n",
                criterion.id.c_str(), pass ? "PASS" : "FAIL", criterion.title.c_str(),
                format(worst_ratio).c_str(), samples, seconds, criterion.time_limit);
    for (const auto& c : checks) {
      std::printf("    %-42s %s worst=%s tol=%s samples=%d%s%s\n", c.name.c_str(),
                  c.passed ? "ok  " : "FAIL", format(c.worst).c_str(),
                  format(c.tolerance).c_str(), c.samples, c.detail.empty() ? "" : "  ",
                  c.detail.c_str());
    }
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
    std::fflush(stdout);
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = total <= kTotalLimitSeconds;
  std::printf("total %.1fs (limit %.0fs) %s\n", total, kTotalLimitSeconds,
              in_time ? "" : "OVER LIMIT");
  return all && in_time ? 0 : 1;
}
