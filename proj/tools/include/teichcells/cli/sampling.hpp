#pragma once

// Seeded random inputs. Every draw goes through Rng so that a seed fixes the
// output on every platform.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "teichcells/delaunay.hpp"
#include "teichcells/metric.hpp"
#include "teichcells/surface.hpp"

namespace teichcells::cli {

inline constexpr double kMetricLogSpread = 1.2;
inline constexpr double kHexagonLogSpread = 1.5;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) from the top 53 bits of one engine draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  int below(int n) { return static_cast<int>(uniform() * n); }

 private:
  std::mt19937_64 engine_;
};

/// Independent seed for sub-stream `stream` of `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Lengths exp(u), u uniform in [-spread, spread] per edge.
metric::Metric sample_metric(const surface::IdealTriangulation& t, Rng& rng,
                             double spread = kMetricLogSpread);
metric::Metric sample_metric(const surface::IdealTriangulation& t, std::uint64_t seed);

/// Edge sides exp(u), u uniform in [-spread, spread].
std::array<double, 3> sample_hexagon(Rng& rng, double spread = kHexagonLogSpread);

/// `flips` Whitehead moves on random edges that are not self-glued.
surface::IdealTriangulation random_flips(const surface::IdealTriangulation& t, Rng& rng,
                                         int flips);

/// Up to `count` random edges whose deletion leaves every cell simply connected.
std::vector<int> random_forest(const surface::IdealTriangulation& t, Rng& rng, int count);

/// Point on the simplex of `t` minus `deleted`: weights uniform in [0.2, 1]
/// then normalized, scale uniform in [1, 6].
delaunay::ArcComplexPoint random_point(const surface::IdealTriangulation& t,
                                       const std::vector<int>& deleted, Rng& rng, double h);

}  // namespace teichcells::cli
