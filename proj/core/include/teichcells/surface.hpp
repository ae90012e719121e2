#pragma once

// Combinatorics of ideal triangulations of bordered surfaces.
//
// An ideal triangulation is a ribbon structure: hexagons with three slots
// each (see hypgeom.hpp for the side labelling), glued in pairs along edges.
// Every hexagon is oriented counterclockwise and every gluing reverses
// orientation, so the structure is determined by which slot pairs are glued.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace teichcells::surface {

struct Incidence {
  int hexagon = 0;
  int slot = 0;

  friend bool operator==(const Incidence&, const Incidence&) = default;
  friend auto operator<=>(const Incidence&, const Incidence&) = default;
};

/// A boundary arc of one hexagon: arc `arc` sits between slot `arc` and slot `arc + 1`.
struct Corner {
  int hexagon = 0;
  int arc = 0;

  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

struct Edge {
  std::array<Incidence, 2> sides{};
};

/// Position of a hexagon slot in the edge list.
struct SlotRef {
  int edge = -1;
  int side = -1;
};

class IdealTriangulation {
 public:
  int hexagon_count() const { return static_cast<int>(slots_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

  SlotRef at(int hexagon, int slot) const { return slots_.at(hexagon)[slot]; }
  SlotRef at(Incidence inc) const { return at(inc.hexagon, inc.slot); }
  int edge_at(int hexagon, int slot) const { return at(hexagon, slot).edge; }

  /// The slot glued to `inc`.
  Incidence partner(Incidence inc) const;
  bool self_glued(int e) const;

 private:
  friend IdealTriangulation build_triangulation(int, std::vector<Edge>);
  std::vector<Edge> edges_;
  std::vector<std::array<SlotRef, 3>> slots_;
};

/// Validates and indexes a gluing. Throws InvalidGluing when a slot is used
/// twice or left free, an index is out of range, or the result is disconnected.
IdealTriangulation build_triangulation(int hexagon_count, std::vector<Edge> edges);

struct SurfaceInvariants {
  int chi = 0;
  int genus = 0;
  int boundary_count = 0;
  /// One cyclic corner sequence per boundary component, in boundary order.
  std::vector<std::vector<Corner>> boundary_corners;
};

/// Corner following `c` along its boundary component.
Corner next_boundary_corner(const IdealTriangulation& t, Corner c);

SurfaceInvariants surface_invariants(const IdealTriangulation& t);

/// (e_1, H_1, ..., e_k, H_k): hexagons H_{i-1} and H_i share e_i, H_0 = H_k.
struct EdgeCycle {
  std::vector<int> edges;
  std::vector<int> hexagons;
};

inline constexpr std::size_t kMaxCycles = 1'000'000;

/// Simple cycles of an arbitrary multigraph given as (node, node) links;
/// `enumerate_edge_cycles` runs this on the dual graph of a triangulation.
std::vector<EdgeCycle> enumerate_dual_cycles(int node_count,
                                             const std::vector<std::array<int, 2>>& links,
                                             std::size_t limit = kMaxCycles);

/// Every simple cycle of the dual multigraph (loops and parallel pairs
/// included), each once up to rotation and reversal. Sorted by length, then
/// lexicographically by sorted edge set.
std::vector<EdgeCycle> enumerate_edge_cycles(const IdealTriangulation& t,
                                             std::size_t limit = kMaxCycles);

/// Closed walks made of two node-disjoint simple cycles from `cycles` joined
/// by a simple path whose interior avoids both; the path is walked out and
/// back. Each is reported once, as a walk starting and ending on the first
/// cycle.
std::vector<EdgeCycle> enumerate_dual_barbells(int node_count,
                                               const std::vector<std::array<int, 2>>& links,
                                               const std::vector<EdgeCycle>& cycles,
                                               std::size_t limit = kMaxCycles);

/// Barbells of the dual multigraph of `t`, built on its simple cycles.
std::vector<EdgeCycle> enumerate_edge_barbells(const IdealTriangulation& t,
                                               std::size_t limit = kMaxCycles);

/// Whitehead move on edge `e`; the new diagonal keeps index `e` and sits at
/// slot 0 of both hexagons. With e glued between (h1, s1) and (h2, s2) the
/// result has h1 = (e, old h1 slot s1+2, old h2 slot s2+1) and
/// h2 = (e, old h2 slot s2+2, old h1 slot s1+1). Throws SelfGluedEdge.
IdealTriangulation combinatorial_flip(const IdealTriangulation& t, int e);

/// A merged cell: the hexagons it contains, the kept slots met walking its
/// boundary counterclockwise, and the boundary corners between them
/// (corner j lies between slot j and slot j+1, possibly made of several
/// hexagon arcs joined across deleted edges).
struct Cell {
  std::vector<int> hexagons;
  std::vector<Incidence> slots;
  std::vector<std::vector<Corner>> corners;

  int side_count() const { return static_cast<int>(slots.size()); }
};

class CellDecomposition {
 public:
  const IdealTriangulation& base() const { return base_; }
  const std::vector<int>& deleted() const { return deleted_; }
  std::vector<int> kept_edges() const;
  bool is_deleted(int e) const { return deleted_mask_.at(static_cast<std::size_t>(e)); }

  const std::vector<Cell>& cells() const { return cells_; }
  /// Index of the cell containing hexagon h.
  int cell_of(int hexagon) const { return cell_of_.at(static_cast<std::size_t>(hexagon)); }

 private:
  friend CellDecomposition delete_edges(const IdealTriangulation&, std::vector<int>);
  IdealTriangulation base_;
  std::vector<int> deleted_;
  std::vector<bool> deleted_mask_;
  std::vector<Cell> cells_;
  std::vector<int> cell_of_;
};

/// Throws NonFillable when the deleted set contains an edge cycle.
CellDecomposition delete_edges(const IdealTriangulation& t, std::vector<int> deleted);

/// Fan triangulation of every non-hexagonal cell from one of its corners.
/// The anchor is the corner `offset` places counterclockwise from the cell's
/// lowest-index corner.
struct FanAnchor {
  int offset = 0;
};

struct Completion {
  IdealTriangulation triangulation;
  /// Edge indices of the added diagonals (the deleted indices, reused).
  std::vector<int> added;
};

/// Kept edges keep their indices; added diagonals take the deleted indices in
/// ascending order.
Completion triangulate_cells(const CellDecomposition& c, FanAnchor anchor = {});

struct TriangulationMatch {
  std::vector<int> hexagon_map;
  /// Slot s of hexagon h maps to slot (s + rotation[h]) % 3 of hexagon_map[h].
  std::vector<int> rotation;
  std::vector<int> edge_map;
};

std::optional<TriangulationMatch> isomorphic(const IdealTriangulation& a,
                                             const IdealTriangulation& b);

struct DecompositionMatch {
  std::vector<int> cell_map;
  std::vector<int> rotation;
  /// Kept edge of `a` -> kept edge of `b`; -1 on deleted edges.
  std::vector<int> edge_map;
};

/// Isomorphism of the cell structures (kept edges only); the underlying
/// completions may differ.
std::optional<DecompositionMatch> isomorphic(const CellDecomposition& a,
                                             const CellDecomposition& b);
std::vector<DecompositionMatch> all_isomorphisms(const CellDecomposition& a,
                                                 const CellDecomposition& b);

}  // namespace teichcells::surface
