#include "teichcells/metric.hpp"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "teichcells/bundled.hpp"
#include "teichcells/cli/sampling.hpp"
#include "teichcells/errors.hpp"

namespace teichcells::metric {
namespace {

const double kRegular = std::acosh(2.0);

Metric regular_torus() { return {{kRegular, kRegular, kRegular}}; }

TEST(F, Examples) {
  for (double h : {0.0, 0.5, 1.0, 2.0, 3.5}) EXPECT_EQ(F(0.0, h), 0.0);
  EXPECT_NEAR(F(0.6584789, 1.0), 0.7071068, 1e-7);
  EXPECT_THROW(F(1.0, -0.5), DomainError);
  EXPECT_THROW(F_quadrature(1.0, -1.0), DomainError);
  EXPECT_THROW(F(std::nan(""), 1.0), DomainError);
}

TEST(F, OddAndIncreasing) {
  cli::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const double t = rng.uniform(-4.0, 4.0);
    const double h = rng.uniform(0.0, 4.0);
    EXPECT_NEAR(F(-t, h), -F(t, h), 1e-12 * std::max(1.0, std::abs(F(t, h))));
    EXPECT_LT(F(t, h), F(t + 1e-3, h));
  }
}

TEST(F, QuadratureMatchesClosedForms) {
  for (int h = 0; h < 3; ++h) {
    for (int i = 0; i <= 100; ++i) {
      const double t = -5.0 + 0.1 * i;
      const double exact = oracle::closed_form_F(t, h);
      EXPECT_NEAR(F(t, h), exact, 1e-14 * std::max(1.0, std::abs(exact)));
      EXPECT_NEAR(F_quadrature(t, h), exact, 1e-12 * std::max(1e-300, std::abs(exact)));
    }
  }
}

TEST(F, FractionalPowersMatchFixedSimpson) {
  for (double h : {0.5, 1.5, 3.5}) {
    for (double t : {-3.0, -0.2, 0.7, 2.5, 5.0}) {
      const double ref = oracle::simpson_F(t, h, 20000);
      EXPECT_NEAR(F(t, h), ref, 1e-10 * std::abs(ref)) << "h=" << h << " t=" << t;
    }
  }
}

TEST(Validate, RejectsBadMetrics) {
  const auto t = bundled::one_holed_torus();
  EXPECT_THROW(validate(t, Metric{{1.0, 1.0}}), DomainError);
  EXPECT_THROW(validate(t, Metric{{1.0, 0.0, 1.0}}), DomainError);
  EXPECT_THROW(validate(t, Metric{{1.0, INFINITY, 1.0}}), DomainError);
  EXPECT_NO_THROW(validate(t, regular_torus()));
}

TEST(BoundaryArcs, Examples) {
  const auto t = bundled::one_holed_torus();
  for (const auto& hex : boundary_arcs(t, regular_torus()).arcs) {
    for (double a : hex) EXPECT_NEAR(a, 1.3169579, 1e-7);
  }
  const double x = std::acosh(3.0);
  for (const auto& hex : boundary_arcs(t, Metric{{x, x, x}}).arcs) {
    for (double a : hex) EXPECT_NEAR(a, 0.9624237, 1e-7);
  }
  const auto lengths = boundary_lengths(t, regular_torus());
  ASSERT_EQ(lengths.size(), 1u);
  EXPECT_NEAR(lengths[0], 6.0 * kRegular, 1e-12);
}

TEST(BoundaryArcs, CosineLawOnRandomMetrics) {
  for (const auto& [name, t] : bundled::all_surfaces()) {
    const auto m = cli::sample_metric(t, 12);
    const auto arcs = boundary_arcs(t, m);
    for (int h = 0; h < t.hexagon_count(); ++h) {
      const auto x = hexagon_edge_lengths(t, m, h);
      for (int k = 0; k < 3; ++k) {
        // Arc k faces slot k-1.
        const int f = (k + 2) % 3;
        EXPECT_NEAR(arcs.arcs[h][k], oracle::facing_arc(x[f], x[(f + 1) % 3], x[(f + 2) % 3]),
                    1e-10)
            << name;
      }
    }
  }
}

TEST(Psi, RegularTorus) {
  const auto t = bundled::one_holed_torus();
  const std::array<double, 3> spec{1.3169579, 1.4142136, 1.5245043};
  for (int h = 0; h < 3; ++h) {
    for (double v : psi(t, regular_torus(), h).values) {
      EXPECT_NEAR(v, oracle::regular_torus_psi(h), 1e-12);
      EXPECT_NEAR(v, spec[h], 1e-6);
    }
  }
}

TEST(Psi, SumsTheTwoSides) {
  const auto t = bundled::genus_two_one_boundary();
  const auto m = cli::sample_metric(t, 13);
  const auto p = psi(t, m, 1.5);
  for (int e = 0; e < t.edge_count(); ++e) {
    double sum = 0.0;
    for (const auto& inc : t.edge(e).sides) sum += F(p.half_terms[inc.hexagon][inc.slot], 1.5);
    EXPECT_DOUBLE_EQ(p.values[e], sum);
  }
}

TEST(Psi, SignDoesNotDependOnH) {
  for (const auto& [name, t] : bundled::all_surfaces()) {
    cli::Rng rng(14);
    for (int k = 0; k < 50; ++k) {
      const auto m = cli::sample_metric(t, rng);
      const auto base = psi(t, m, 0.0).values;
      for (double h : {0.5, 1.0, 2.0, 3.5}) {
        const auto other = psi(t, m, h).values;
        for (int e = 0; e < t.edge_count(); ++e) {
          EXPECT_EQ(std::signbit(base[e]), std::signbit(other[e])) << name << " edge " << e;
        }
      }
    }
  }
}

TEST(Psi, RejectsNegativeH) {
  EXPECT_THROW(psi(bundled::one_holed_torus(), regular_torus(), -1.0), DomainError);
  EXPECT_THROW(psi_jacobian(bundled::one_holed_torus(), regular_torus(), -1.0), DomainError);
}

TEST(PsiJacobian, MatchesFiniteDifferences) {
  for (const auto& [name, t] : bundled::all_surfaces()) {
    cli::Rng rng(15);
    for (int k = 0; k < 10; ++k) {
      const auto m = cli::sample_metric(t, rng);
      for (double h : {0.0, 0.5, 1.0, 2.0}) {
        const auto jac = psi_jacobian(t, m, h);
        const auto fd = oracle::finite_difference_jacobian(t, m, h, 1e-5);
        EXPECT_LE((jac - fd).lpNorm<Eigen::Infinity>(), 1e-6) << name << " h=" << h;
      }
    }
  }
}

TEST(PsiJacobian, RegularTorusIsSymmetric) {
  const auto t = bundled::one_holed_torus();
  const auto jac = psi_jacobian(t, regular_torus(), 1.0);
  const auto fd = oracle::finite_difference_jacobian(t, regular_torus(), 1.0, 1e-5);
  EXPECT_LE((jac - fd).lpNorm<Eigen::Infinity>(), 1e-6);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(jac(i, j), i == j ? jac(0, 0) : jac(0, 1), 1e-12);
    }
  }
}

TEST(PsiJacobian, VanishesOffSharedHexagons) {
  const auto t = bundled::genus_two_one_boundary();
  const auto jac = psi_jacobian(t, cli::sample_metric(t, 16), 1.0);
  for (int e = 0; e < t.edge_count(); ++e) {
    for (int f = 0; f < t.edge_count(); ++f) {
      bool share = false;
      for (const auto& a : t.edge(e).sides) {
        for (const auto& b : t.edge(f).sides) share = share || a.hexagon == b.hexagon;
      }
      if (!share) EXPECT_EQ(jac(e, f), 0.0);
    }
  }
}

TEST(FlipGeometric, AgreesWithDevelopedOctagon) {
  for (const auto& [name, t] : bundled::all_surfaces()) {
    cli::Rng rng(17);
    for (int k = 0; k < 100; ++k) {
      const auto m = cli::sample_metric(t, rng);
      for (int e = 0; e < t.edge_count(); ++e) {
        if (t.self_glued(e)) continue;
        const double length = flipped_length(t, m, e);
        EXPECT_NEAR(length, oracle::developed_flip_length(t, m, e), 1e-9 * std::max(1.0, length))
            << name << " edge " << e;
      }
    }
  }
}

TEST(FlipGeometric, RegularTorus) {
  const auto t = bundled::one_holed_torus();
  const auto flipped = flip_geometric(t, regular_torus(), 0);
  EXPECT_NEAR(flipped.metric.lengths[0], oracle::developed_flip_length(t, regular_torus(), 0),
              1e-9);
  EXPECT_EQ(flipped.metric.lengths[1], kRegular);
  EXPECT_EQ(flipped.metric.lengths[2], kRegular);
}

TEST(FlipGeometric, DoubleFlipAndBoundaryLengths) {
  for (const auto& [name, t] : bundled::all_surfaces()) {
    cli::Rng rng(18);
    for (int k = 0; k < 50; ++k) {
      const auto m = cli::sample_metric(t, rng);
      auto before = boundary_lengths(t, m);
      std::sort(before.begin(), before.end());
      for (int e = 0; e < t.edge_count(); ++e) {
        if (t.self_glued(e)) continue;
        const auto once = flip_geometric(t, m, e);
        for (int f = 0; f < t.edge_count(); ++f) {
          if (f != e) EXPECT_EQ(once.metric.lengths[f], m.lengths[f]);
        }
        auto after = boundary_lengths(once.triangulation, once.metric);
        std::sort(after.begin(), after.end());
        for (std::size_t i = 0; i < before.size(); ++i) EXPECT_NEAR(after[i], before[i], 1e-9);
        const auto twice = flip_geometric(once.triangulation, once.metric, e);
        EXPECT_NEAR(twice.metric.lengths[e], m.lengths[e], 1e-9) << name << " edge " << e;
      }
    }
  }
}

TEST(FlipGeometric, RejectsSelfGluedEdge) {
  const auto t = surface::build_triangulation(
      2, {surface::Edge{{surface::Incidence{0, 0}, surface::Incidence{0, 1}}},
          surface::Edge{{surface::Incidence{0, 2}, surface::Incidence{1, 0}}},
          surface::Edge{{surface::Incidence{1, 1}, surface::Incidence{1, 2}}}});
  EXPECT_THROW(flip_geometric(t, Metric{{1.0, 1.0, 1.0}}, 0), SelfGluedEdge);
  EXPECT_THROW(flipped_length(t, Metric{{1.0, 1.0, 1.0}}, 3), DomainError);
}

}  // namespace
}  // namespace teichcells::metric
