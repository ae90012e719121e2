#include "teichcells/bundled.hpp"

#include <initializer_list>
#include <utility>

namespace teichcells::bundled {

namespace {

using Pair = std::pair<std::pair<int, int>, std::pair<int, int>>;

surface::IdealTriangulation from_pairs(int hexagons, std::initializer_list<Pair> pairs) {
  std::vector<surface::Edge> edges;
  for (const auto& [a, b] : pairs) {
    edges.push_back({{surface::Incidence{a.first, a.second}, surface::Incidence{b.first, b.second}}});
  }
  return surface::build_triangulation(hexagons, std::move(edges));
}

}  // namespace

surface::IdealTriangulation one_holed_torus() {
  return from_pairs(2, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}, {{0, 2}, {1, 2}}});
}

surface::IdealTriangulation pair_of_pants() {
  return from_pairs(2, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 1}}});
}

surface::IdealTriangulation four_holed_sphere() {
  return from_pairs(4, {{{0, 0}, {2, 0}},
                        {{0, 1}, {1, 2}},
                        {{0, 2}, {3, 1}},
                        {{1, 0}, {2, 2}},
                        {{1, 1}, {3, 2}},
                        {{2, 1}, {3, 0}}});
}

surface::IdealTriangulation genus_two_one_boundary() {
  return from_pairs(6, {{{0, 0}, {1, 1}},
                        {{0, 1}, {3, 2}},
                        {{0, 2}, {5, 2}},
                        {{1, 0}, {4, 0}},
                        {{1, 2}, {5, 0}},
                        {{2, 0}, {3, 1}},
                        {{2, 1}, {5, 1}},
                        {{2, 2}, {4, 2}},
                        {{3, 0}, {4, 1}}});
}

std::vector<NamedSurface> all_surfaces() {
  return {{"one_holed_torus", one_holed_torus()},
          {"pair_of_pants", pair_of_pants()},
          {"four_holed_sphere", four_holed_sphere()},
          {"genus_two_one_boundary", genus_two_one_boundary()}};
}

}  // namespace teichcells::bundled
