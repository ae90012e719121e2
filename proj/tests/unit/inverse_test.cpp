#include "teichcells/inverse.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "teichcells/bundled.hpp"
#include "teichcells/cli/sampling.hpp"
#include "teichcells/errors.hpp"

namespace teichcells::inverse {
namespace {

const double kRegular = std::acosh(2.0);

double walk_sum(const surface::EdgeCycle& c, const std::vector<double>& z) {
  double s = 0.0;
  for (int e : c.edges) s += z[e];
  return s;
}

std::vector<double> random_target(const IdealTriangulation& t, cli::Rng& rng) {
  std::vector<double> z;
  for (int e = 0; e < t.edge_count(); ++e) z.push_back(rng.uniform(-1.0, 2.0));
  return z;
}

TEST(PolytopeContains, TorusExamples) {
  const auto t = bundled::one_holed_torus();
  const auto in = polytope_contains(t, {1.0, 1.0, -0.5});
  EXPECT_TRUE(in.inside);
  EXPECT_FALSE(in.witness.has_value());
  EXPECT_DOUBLE_EQ(in.min_cycle_sum, 0.5);

  const std::vector<double> z{1.0, 1.0, -1.0};
  const auto out = polytope_contains(t, z);
  EXPECT_FALSE(out.inside);
  ASSERT_TRUE(out.witness.has_value());
  EXPECT_EQ(out.witness->edges.size(), 2u);
  EXPECT_DOUBLE_EQ(walk_sum(*out.witness, z), 0.0);
  EXPECT_DOUBLE_EQ(out.min_cycle_sum, 0.0);
}

TEST(PolytopeContains, RejectsMalformedTargets) {
  const auto t = bundled::one_holed_torus();
  EXPECT_THROW(polytope_contains(t, {1.0, 1.0}), DomainError);
  EXPECT_THROW(polytope_contains(t, {1.0, std::nan(""), 1.0}), DomainError);
  EXPECT_THROW(polytope_contains(t, {1.0, INFINITY, 1.0}), DomainError);
}

TEST(PolytopeContains, AgreesWithSubsetCyclesWhereThereAreNoBarbells) {
  cli::Rng rng(404);
  for (const auto& t : {bundled::one_holed_torus(), bundled::pair_of_pants(),
                        bundled::four_holed_sphere()}) {
    const auto links = oracle::dual_links(t);
    const auto cycles = oracle::subset_cycles(t.hexagon_count(), links);
    int inside = 0;
    for (int k = 0; k < 300; ++k) {
      const auto z = random_target(t, rng);
      double best = INFINITY;
      for (const auto& c : cycles) {
        double s = 0.0;
        for (int e : c) s += z[e];
        best = std::min(best, s);
      }
      const auto m = polytope_contains(t, z);
      EXPECT_EQ(m.inside, best > kMembershipMargin);
      EXPECT_NEAR(m.min_cycle_sum, best, 1e-12);
      if (m.witness) EXPECT_NEAR(walk_sum(*m.witness, z), best, 1e-12);
      inside += m.inside;
    }
    EXPECT_GT(inside, 0);
    EXPECT_LT(inside, 300);
  }
}

TEST(PolytopeContains, AgreesWithClosedWalksOnGenusTwo) {
  const auto t = bundled::genus_two_one_boundary();
  const auto links = oracle::dual_links(t);
  cli::Rng rng(405);
  int inside = 0;
  for (int k = 0; k < 100; ++k) {
    const auto z = random_target(t, rng);
    const double best = oracle::min_closed_walk(t.hexagon_count(), links, z, 12);
    const auto m = polytope_contains(t, z);
    EXPECT_EQ(m.inside, best > kMembershipMargin) << "sample " << k;
    // Repeating a negative cycle lowers a walk's sum, so the minima agree
    // only when they are positive.
    if (best > 0.0) EXPECT_NEAR(m.min_cycle_sum, best, 1e-12) << "sample " << k;
    inside += m.inside;
  }
  EXPECT_GT(inside, 0);
}

// Every simple cycle has a positive sum here, but a barbell does not.
TEST(PolytopeContains, BarbellWitnessOnGenusTwo) {
  const auto t = bundled::genus_two_one_boundary();
  const std::vector<double> z{0.350564, 1.52507, -0.629266, -0.667532, 0.306084,
                              0.25699,  1.3062,  0.515201,  0.195552};
  for (const auto& c : surface::enumerate_edge_cycles(t)) EXPECT_GT(walk_sum(c, z), 0.0);
  const auto m = polytope_contains(t, z);
  EXPECT_FALSE(m.inside);
  ASSERT_TRUE(m.witness.has_value());
  EXPECT_LT(walk_sum(*m.witness, z), -0.3);
  EXPECT_LT(oracle::min_closed_walk(t.hexagon_count(), oracle::dual_links(t), z, 12), 0.0);
}

TEST(SolveMetric, RegularTorus) {
  const auto t = bundled::one_holed_torus();
  for (int h = 0; h < 3; ++h) {
    const double v = oracle::regular_torus_psi(h);
    const auto r = solve_metric(t, {v, v, v}, h);
    EXPECT_LE(r.residual, 1e-9);
    for (double l : r.metric.lengths) EXPECT_NEAR(l, kRegular, 1e-10);
  }
}

TEST(SolveMetric, RecoversSampledMetrics) {
  cli::Rng rng(77);
  for (const auto& [name, t] : bundled::all_surfaces()) {
    for (int k = 0; k < 10; ++k) {
      const auto m = cli::sample_metric(t, rng);
      const double h = k % 4 == 3 ? 1.5 : k % 3;
      const auto target = metric::psi(t, m, h).values;
      const auto r = solve_metric(t, target, h);
      for (int e = 0; e < t.edge_count(); ++e) {
        EXPECT_NEAR(r.metric.lengths[e], m.lengths[e], 1e-8 * std::max(1.0, m.lengths[e]))
            << name << " sample " << k;
      }
    }
  }
}

TEST(SolveMetric, MidpointOfTwoImagesIsAnImage) {
  const auto t = bundled::four_holed_sphere();
  cli::Rng rng(78);
  for (int k = 0; k < 10; ++k) {
    const auto a = metric::psi(t, cli::sample_metric(t, rng), 2.0).values;
    const auto b = metric::psi(t, cli::sample_metric(t, rng), 2.0).values;
    std::vector<double> mid;
    for (std::size_t i = 0; i < a.size(); ++i) mid.push_back(0.5 * (a[i] + b[i]));
    EXPECT_TRUE(polytope_contains(t, mid).inside);
    const auto r = solve_metric(t, mid, 2.0);
    const auto back = metric::psi(t, r.metric, 2.0).values;
    for (std::size_t i = 0; i < mid.size(); ++i) EXPECT_NEAR(back[i], mid[i], 1e-9);
  }
}

TEST(SolveMetric, Errors) {
  const auto t = bundled::one_holed_torus();
  EXPECT_THROW(solve_metric(t, {1.0, 1.0, -1.0}, 0.0), InvalidTarget);
  EXPECT_THROW(solve_metric(t, {1.0, 1.0, 1.0}, -0.5), DomainError);

  SolveOptions opts;
  opts.max_iterations = 0;
  opts.random_restarts = 0;
  try {
    solve_metric(t, {2.0, 3.0, 4.0}, 1.0, opts);
    FAIL() << "expected NoConvergence";
  } catch (const NoConvergence& err) {
    EXPECT_FALSE(err.residuals().empty());
    EXPECT_EQ(err.error_class(), ErrorClass::Numerical);
  }
}

TEST(PiInverse, RegularTorusRoundTrip) {
  const auto t = bundled::one_holed_torus();
  const metric::Metric m{{kRegular, kRegular, kRegular}};
  for (int h = 0; h < 3; ++h) {
    const auto p = delaunay::pi_map(t, m, h).point;
    const auto r = pi_inverse(p);
    EXPECT_TRUE(r.added.empty());
    for (double l : r.metric.lengths) EXPECT_NEAR(l, kRegular, 1e-10);
  }
}

TEST(PiInverse, OctagonGetsAZeroDiagonal) {
  const auto t = bundled::four_holed_sphere();
  cli::Rng rng(91);
  for (int k = 0; k < 10; ++k) {
    const auto deleted = cli::random_forest(t, rng, 1);
    const auto p = cli::random_point(t, deleted, rng, static_cast<double>(k % 3));
    const auto r = pi_inverse(p);
    ASSERT_EQ(r.added, deleted);
    const auto values = metric::psi(r.triangulation, r.metric, p.h).values;
    EXPECT_NEAR(values[r.added[0]], 0.0, 1e-9);
    const auto kept = p.decomposition.kept_edges();
    for (std::size_t i = 0; i < kept.size(); ++i) {
      EXPECT_NEAR(values[kept[i]], p.scale * p.weights[i], 1e-9);
    }
    EXPECT_TRUE(delaunay::points_agree(p, delaunay::pi_map(r.triangulation, r.metric, p.h).point,
                                       1e-7));
  }
}

TEST(PiInverse, AnchorsGiveTheSamePoint) {
  const auto t = bundled::four_holed_sphere();
  cli::Rng rng(92);
  for (int k = 0; k < 5; ++k) {
    const auto deleted = cli::random_forest(t, rng, 2);
    const auto p = cli::random_point(t, deleted, rng, 1.0);
    for (int offset = 0; offset < 3; ++offset) {
      const auto r = pi_inverse(p, surface::FanAnchor{offset});
      const auto again = delaunay::pi_map(r.triangulation, r.metric, 1.0);
      EXPECT_TRUE(delaunay::points_agree(p, again.point, 1e-7)) << "offset " << offset;
    }
  }
}

TEST(PiInverse, RejectsInvalidPoints) {
  const auto t = bundled::one_holed_torus();
  cli::Rng rng(1);
  auto p = cli::random_point(t, {}, rng, 1.0);
  p.scale = -1.0;
  EXPECT_THROW(pi_inverse(p), DomainError);
}

}  // namespace
}  // namespace teichcells::inverse
