#pragma once

// Verification suites: property checks over seeded random samples on the
// bundled surfaces. A report is a deterministic function of
// (suite, samples, seed) apart from its wall time.

#include <cstdint>
#include <string>
#include <vector>

#include "teichcells/cli/io.hpp"

namespace teichcells::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Largest error seen, in the units of `tolerance`.
  double worst = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  double wall_seconds = 0.0;

  bool passed() const;
  Json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Throws UnknownSuite for names outside suite_names().
VerificationReport run_suite(const std::string& name, int samples, std::uint64_t seed);

// Individual checks. Counts are per surface where a check loops over the
// bundled surfaces, per hexagon otherwise.
namespace checks {

CheckResult hexagon_development(int count, std::uint64_t seed);
CheckResult isometry_invariance(int count, std::uint64_t seed);
CheckResult incircle_tangency(int count, std::uint64_t seed);

CheckResult gap_identity(int count, std::uint64_t seed);
CheckResult gap_cases();
CheckResult tangent_equality(int count, std::uint64_t seed);

CheckResult sign_h_independence(int per_surface, std::uint64_t seed);

CheckResult psi_round_trip(int per_surface, std::uint64_t seed);
CheckResult quadrature_closed_forms();
CheckResult regular_torus_psi();

CheckResult double_flip(int per_surface, std::uint64_t seed);
CheckResult flip_boundary_lengths(int per_surface, std::uint64_t seed);
CheckResult delaunay_termination(int per_surface, std::uint64_t seed);
CheckResult spine_structure(int per_surface, std::uint64_t seed);

CheckResult pi_round_trip_metric(int per_surface, std::uint64_t seed);
CheckResult pi_round_trip_point(int per_surface, std::uint64_t seed);
CheckResult completion_independence(int per_surface, std::uint64_t seed);
CheckResult pi_injectivity(int per_surface, std::uint64_t seed);
CheckResult convexity(int per_surface, std::uint64_t seed);
CheckResult membership_soundness(int per_surface, std::uint64_t seed);

CheckResult perturbation_stability(int per_surface, std::uint64_t seed);
CheckResult wall_crossing(int per_surface, std::uint64_t seed);

}  // namespace checks

}  // namespace teichcells::cli
