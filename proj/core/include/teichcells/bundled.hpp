#pragma once

#include <string>
#include <vector>

#include "teichcells/surface.hpp"

namespace teichcells::bundled {

/// 2 hexagons, 3 edges; edge i glues slot i to slot i.
surface::IdealTriangulation one_holed_torus();
/// 2 hexagons, 3 edges; slots glued by the reflection i -> -i.
surface::IdealTriangulation pair_of_pants();
/// 4 hexagons, 6 edges; dual graph is the tetrahedron.
surface::IdealTriangulation four_holed_sphere();
/// 6 hexagons, 9 edges, genus 2 with one boundary component.
surface::IdealTriangulation genus_two_one_boundary();

struct NamedSurface {
  std::string name;
  surface::IdealTriangulation triangulation;
};

std::vector<NamedSurface> all_surfaces();

}  // namespace teichcells::bundled
