#include "teichcells/cli/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace teichcells::cli {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ stream);
}

metric::Metric sample_metric(const surface::IdealTriangulation& t, Rng& rng, double spread) {
  metric::Metric m;
  m.lengths.reserve(static_cast<std::size_t>(t.edge_count()));
  for (int e = 0; e < t.edge_count(); ++e) m.lengths.push_back(std::exp(rng.uniform(-spread, spread)));
  return m;
}

metric::Metric sample_metric(const surface::IdealTriangulation& t, std::uint64_t seed) {
  Rng rng(seed);
  return sample_metric(t, rng);
}

std::array<double, 3> sample_hexagon(Rng& rng, double spread) {
  std::array<double, 3> x{};
  for (double& v : x) v = std::exp(rng.uniform(-spread, spread));
  return x;
}

surface::IdealTriangulation random_flips(const surface::IdealTriangulation& t, Rng& rng,
                                         int flips) {
  surface::IdealTriangulation out = t;
  for (int i = 0; i < flips; ++i) {
    std::vector<int> candidates;
    for (int e = 0; e < out.edge_count(); ++e) {
      if (!out.self_glued(e)) candidates.push_back(e);
    }
    if (candidates.empty()) break;
    out = surface::combinatorial_flip(out, candidates[rng.below(static_cast<int>(candidates.size()))]);
  }
  return out;
}

std::vector<int> random_forest(const surface::IdealTriangulation& t, Rng& rng, int count) {
  std::vector<int> order(static_cast<std::size_t>(t.edge_count()));
  std::iota(order.begin(), order.end(), 0);
  for (int i = static_cast<int>(order.size()) - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }
  std::vector<int> parent(static_cast<std::size_t>(t.hexagon_count()));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> chosen;
  for (int e : order) {
    if (static_cast<int>(chosen.size()) >= count) break;
    const int a = find_root(parent, t.edge(e).sides[0].hexagon);
    const int b = find_root(parent, t.edge(e).sides[1].hexagon);
    if (a == b) continue;
    parent[a] = b;
    chosen.push_back(e);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

delaunay::ArcComplexPoint random_point(const surface::IdealTriangulation& t,
                                       const std::vector<int>& deleted, Rng& rng, double h) {
  delaunay::ArcComplexPoint p{surface::delete_edges(t, deleted), {}, 0.0, h};
  const auto kept = p.decomposition.kept_edges();
  double sum = 0.0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    p.weights.push_back(rng.uniform(0.2, 1.0));
    sum += p.weights.back();
  }
  for (double& w : p.weights) w /= sum;
  p.scale = rng.uniform(1.0, 6.0);
  return p;
}

}  // namespace teichcells::cli
