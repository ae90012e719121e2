#include "teichcells/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/LU>

#include "teichcells/errors.hpp"

namespace teichcells::inverse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Step cap in log-length units per Newton iteration.
constexpr double kMaxLogStep = 2.0;
constexpr int kMaxContinuationSteps = 400;

struct Evaluation {
  Eigen::VectorXd residual;
  bool finite = false;
};

Evaluation evaluate(const IdealTriangulation& t, const Eigen::VectorXd& log_lengths,
                    const Eigen::VectorXd& target, double h) {
  Evaluation ev;
  Metric m;
  m.lengths.resize(static_cast<std::size_t>(log_lengths.size()));
  for (Eigen::Index i = 0; i < log_lengths.size(); ++i) {
    m.lengths[i] = std::exp(log_lengths[i]);
    if (!std::isfinite(m.lengths[i]) || m.lengths[i] <= 0.0) return ev;
  }
  try {
    const auto values = metric::psi(t, m, h).values;
    ev.residual = Eigen::Map<const Eigen::VectorXd>(values.data(), target.size()) - target;
    ev.finite = ev.residual.allFinite();
  } catch (const DomainError&) {
    ev.finite = false;
  }
  return ev;
}

Eigen::MatrixXd log_jacobian(const IdealTriangulation& t, const Eigen::VectorXd& log_lengths,
                             double h) {
  Metric m;
  for (Eigen::Index i = 0; i < log_lengths.size(); ++i) {
    m.lengths.push_back(std::exp(log_lengths[i]));
  }
  Eigen::MatrixXd jac = metric::psi_jacobian(t, m, h);
  for (Eigen::Index j = 0; j < jac.cols(); ++j) jac.col(j) *= m.lengths[j];
  return jac;
}

struct Newton {
  std::vector<double> trace;
  double residual = kInf;
  int iterations = 0;
};

// Damped Newton from u (updated in place) towards psi = goal.
Newton newton(const IdealTriangulation& t, Eigen::VectorXd& u, const Eigen::VectorXd& goal,
              double h, double tight, int max_iterations) {
  Newton out;
  Evaluation ev = evaluate(t, u, goal, h);
  if (!ev.finite) return out;
  for (; out.iterations < max_iterations; ++out.iterations) {
    const double norm = ev.residual.lpNorm<Eigen::Infinity>();
    out.trace.push_back(norm);
    if (norm <= tight) break;
    const Eigen::MatrixXd jac = log_jacobian(t, u, h);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible()) break;
    Eigen::VectorXd step = lu.solve(-ev.residual);
    if (!step.allFinite()) break;
    const double big = step.lpNorm<Eigen::Infinity>();
    if (big > kMaxLogStep) step *= kMaxLogStep / big;

    const double base = ev.residual.norm();
    bool accepted = false;
    for (double lambda = 1.0; lambda > 1e-12; lambda *= 0.5) {
      Evaluation trial = evaluate(t, u + lambda * step, goal, h);
      if (trial.finite && trial.residual.norm() <= (1.0 - 1e-4 * lambda) * base) {
        u += lambda * step;
        ev = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.residual = ev.residual.lpNorm<Eigen::Infinity>();
  if (out.trace.empty() || out.trace.back() != out.residual) out.trace.push_back(out.residual);
  return out;
}

}  // namespace

Membership polytope_contains(const IdealTriangulation& t, const std::vector<double>& target) {
  if (static_cast<int>(target.size()) != t.edge_count()) {
    throw DomainError("target has " + std::to_string(target.size()) + " entries for " +
                      std::to_string(t.edge_count()) + " edges");
  }
  for (double z : target) {
    if (!std::isfinite(z)) throw DomainError("target entries must be finite");
  }
  Membership out;
  out.min_cycle_sum = kInf;
  auto consider = [&](surface::EdgeCycle& walk) {
    double sum = 0.0;
    for (int e : walk.edges) sum += target[e];
    if (sum < out.min_cycle_sum) {
      out.min_cycle_sum = sum;
      if (sum <= kMembershipMargin) out.witness = std::move(walk);
    }
  };
  for (auto& cycle : surface::enumerate_edge_cycles(t)) consider(cycle);
  for (auto& walk : surface::enumerate_edge_barbells(t)) consider(walk);
  out.inside = out.min_cycle_sum > kMembershipMargin;
  if (out.inside) out.witness.reset();
  return out;
}

SolveResult solve_metric(const IdealTriangulation& t, const std::vector<double>& target, double h,
                         const SolveOptions& options) {
  if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("h must be >= 0");
  const Membership member = polytope_contains(t, target);
  if (!member.inside) {
    throw InvalidTarget("target is outside the image: an edge cycle sums to " +
                        std::to_string(member.min_cycle_sum));
  }

  const Eigen::Index n = t.edge_count();
  const Eigen::VectorXd goal = Eigen::Map<const Eigen::VectorXd>(target.data(), n);
  const double scale = std::max(1.0, goal.lpNorm<Eigen::Infinity>());
  // Newton keeps going past the required tolerance while it still makes
  // progress; quadratic convergence makes the extra steps cheap.
  const double tight = 1e-14 * scale;

  auto finish = [&](const Eigen::VectorXd& u, const Newton& run, int attempt) {
    SolveResult out;
    for (Eigen::Index i = 0; i < n; ++i) out.metric.lengths.push_back(std::exp(u[i]));
    out.residual = run.residual;
    out.iterations = run.iterations;
    out.attempt = attempt;
    return out;
  };

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> start(-1.0, 1.0);
  std::vector<double> trace;
  for (int attempt = 0; attempt <= options.random_restarts; ++attempt) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    if (attempt > 0) {
      for (Eigen::Index i = 0; i < n; ++i) u[i] = start(rng);
    }
    const Newton run = newton(t, u, goal, h, tight, options.max_iterations);
    trace = run.trace;
    if (run.residual <= options.tolerance) return finish(u, run, attempt);
  }

  // Continuation along the segment from psi(all ones) to the target, which
  // stays inside the convex image.
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  const Evaluation origin = evaluate(t, u, Eigen::VectorXd::Zero(n), h);
  if (origin.finite) {
    const Eigen::VectorXd from = origin.residual;
    double reached = 0.0;
    double step = 0.25;
    int total = 0;
    while (reached < 1.0 && step > 1e-6 && total < kMaxContinuationSteps) {
      ++total;
      const double next = std::min(1.0, reached + step);
      const Eigen::VectorXd waypoint = (1.0 - next) * from + next * goal;
      Eigen::VectorXd trial = u;
      const Newton run = newton(t, trial, waypoint, h, next < 1.0 ? 1e-10 * scale : tight,
                                options.max_iterations);
      if (run.residual <= (next < 1.0 ? 1e-8 * scale : options.tolerance)) {
        u = std::move(trial);
        reached = next;
        step *= 1.5;
        if (reached == 1.0) return finish(u, run, options.random_restarts + 1);
      } else {
        trace = run.trace;
        step *= 0.5;
      }
    }
  }
  throw NoConvergence("Newton iteration did not reach the target psi_h", trace);
}

PiInverseResult pi_inverse(const delaunay::ArcComplexPoint& p, surface::FanAnchor anchor,
                           const SolveOptions& options) {
  delaunay::validate(p);
  auto completion = surface::triangulate_cells(p.decomposition, anchor);
  std::vector<double> target(static_cast<std::size_t>(completion.triangulation.edge_count()), 0.0);
  const auto kept = p.decomposition.kept_edges();
  for (std::size_t i = 0; i < kept.size(); ++i) target[kept[i]] = p.scale * p.weights[i];

  auto solved = solve_metric(completion.triangulation, target, p.h, options);
  PiInverseResult out{surface::delete_edges(completion.triangulation, completion.added),
                      completion.triangulation, std::move(solved.metric),
                      std::move(completion.added)};
  return out;
}

}  // namespace teichcells::inverse
