#include "teichcells/surface.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "teichcells/errors.hpp"

namespace teichcells::surface {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

std::string describe(Incidence inc) {
  return "(" + std::to_string(inc.hexagon) + "," + std::to_string(inc.slot) + ")";
}

// Generic oriented ribbon structure: cells with cyclically ordered ends,
// links joining two ends. Used for isomorphism of both triangulations and
// reduced cell decompositions.
struct Ribbon {
  struct End {
    int link = -1;
    int side = -1;
  };
  struct Place {
    int cell = -1;
    int position = -1;
  };
  std::vector<std::vector<End>> cells;
  std::vector<std::array<Place, 2>> links;  // cell = -1 for absent links
};

struct RibbonMatch {
  std::vector<int> cell_map;
  std::vector<int> rotation;
  std::vector<int> link_map;
};

std::vector<RibbonMatch> ribbon_matches(const Ribbon& a, const Ribbon& b, std::size_t limit) {
  std::vector<RibbonMatch> out;
  const std::size_t n = a.cells.size();
  if (n != b.cells.size() || n == 0) return out;
  auto sizes = [](const Ribbon& r) {
    std::vector<std::size_t> s;
    for (const auto& c : r.cells) s.push_back(c.size());
    std::sort(s.begin(), s.end());
    return s;
  };
  if (sizes(a) != sizes(b)) return out;
  auto live_links = [](const Ribbon& r) {
    return std::count_if(r.links.begin(), r.links.end(),
                         [](const auto& l) { return l[0].cell >= 0; });
  };
  if (live_links(a) != live_links(b)) return out;

  const int m0 = static_cast<int>(a.cells[0].size());
  for (std::size_t c = 0; c < n && out.size() < limit; ++c) {
    if (static_cast<int>(b.cells[c].size()) != m0) continue;
    for (int r = 0; r < m0 && out.size() < limit; ++r) {
      RibbonMatch m;
      m.cell_map.assign(n, -1);
      m.rotation.assign(n, 0);
      m.link_map.assign(a.links.size(), -1);
      std::vector<bool> used(n, false);
      m.cell_map[0] = static_cast<int>(c);
      m.rotation[0] = r;
      used[c] = true;
      std::deque<int> queue{0};
      bool ok = true;
      while (ok && !queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        const int size = static_cast<int>(a.cells[x].size());
        const auto& bcell = b.cells[static_cast<std::size_t>(m.cell_map[x])];
        for (int j = 0; j < size && ok; ++j) {
          const Ribbon::End ea = a.cells[x][j];
          const Ribbon::End eb = bcell[(j + m.rotation[x]) % size];
          if (m.link_map[ea.link] >= 0 && m.link_map[ea.link] != eb.link) {
            ok = false;
            break;
          }
          m.link_map[ea.link] = eb.link;
          const Ribbon::Place pa = a.links[ea.link][1 - ea.side];
          const Ribbon::Place pb = b.links[eb.link][1 - eb.side];
          const int ysize = static_cast<int>(a.cells[pa.cell].size());
          if (static_cast<int>(b.cells[pb.cell].size()) != ysize) {
            ok = false;
          } else if (m.cell_map[pa.cell] < 0) {
            if (used[pb.cell]) {
              ok = false;
            } else {
              m.cell_map[pa.cell] = pb.cell;
              m.rotation[pa.cell] = ((pb.position - pa.position) % ysize + ysize) % ysize;
              used[pb.cell] = true;
              queue.push_back(pa.cell);
            }
          } else if (m.cell_map[pa.cell] != pb.cell ||
                     (pa.position + m.rotation[pa.cell]) % ysize != pb.position) {
            ok = false;
          }
        }
      }
      if (ok && std::find(m.cell_map.begin(), m.cell_map.end(), -1) == m.cell_map.end()) {
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

Ribbon ribbon_of(const IdealTriangulation& t) {
  Ribbon r;
  r.cells.assign(static_cast<std::size_t>(t.hexagon_count()), std::vector<Ribbon::End>(3));
  r.links.resize(static_cast<std::size_t>(t.edge_count()));
  for (int e = 0; e < t.edge_count(); ++e) {
    for (int s = 0; s < 2; ++s) {
      const Incidence inc = t.edge(e).sides[s];
      r.cells[inc.hexagon][inc.slot] = {e, s};
      r.links[e][s] = {inc.hexagon, inc.slot};
    }
  }
  return r;
}

Ribbon ribbon_of(const CellDecomposition& c) {
  Ribbon r;
  const auto& base = c.base();
  r.links.resize(static_cast<std::size_t>(base.edge_count()));
  for (std::size_t ci = 0; ci < c.cells().size(); ++ci) {
    const Cell& cell = c.cells()[ci];
    std::vector<Ribbon::End> ends;
    for (std::size_t j = 0; j < cell.slots.size(); ++j) {
      const SlotRef ref = base.at(cell.slots[j]);
      ends.push_back({ref.edge, ref.side});
      r.links[ref.edge][ref.side] = {static_cast<int>(ci), static_cast<int>(j)};
    }
    r.cells.push_back(std::move(ends));
  }
  return r;
}

}  // namespace

Incidence IdealTriangulation::partner(Incidence inc) const {
  const SlotRef ref = at(inc);
  return edges_[ref.edge].sides[1 - ref.side];
}

bool IdealTriangulation::self_glued(int e) const {
  const Edge& ed = edge(e);
  return ed.sides[0].hexagon == ed.sides[1].hexagon;
}

IdealTriangulation build_triangulation(int hexagon_count, std::vector<Edge> edges) {
  if (hexagon_count <= 0) throw InvalidGluing("a triangulation needs at least one hexagon");
  if (3 * hexagon_count != 2 * static_cast<int>(edges.size())) {
    throw InvalidGluing("expected " + std::to_string(3 * hexagon_count / 2.0) + " edges for " +
                        std::to_string(hexagon_count) + " hexagons, got " +
                        std::to_string(edges.size()));
  }
  IdealTriangulation t;
  t.slots_.assign(static_cast<std::size_t>(hexagon_count), {});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (int s = 0; s < 2; ++s) {
      const Incidence inc = edges[e].sides[s];
      if (inc.hexagon < 0 || inc.hexagon >= hexagon_count || inc.slot < 0 || inc.slot > 2) {
        throw InvalidGluing("edge " + std::to_string(e) + " refers to invalid slot " +
                            describe(inc));
      }
      SlotRef& ref = t.slots_[inc.hexagon][inc.slot];
      if (ref.edge >= 0) {
        throw InvalidGluing("slot " + describe(inc) + " is used by edges " +
                            std::to_string(ref.edge) + " and " + std::to_string(e));
      }
      ref = {static_cast<int>(e), s};
    }
  }
  UnionFind uf(hexagon_count);
  for (const Edge& e : edges) uf.unite(e.sides[0].hexagon, e.sides[1].hexagon);
  for (int h = 1; h < hexagon_count; ++h) {
    if (uf.find(h) != uf.find(0)) throw InvalidGluing("gluing is disconnected");
  }
  t.edges_ = std::move(edges);
  return t;
}

Corner next_boundary_corner(const IdealTriangulation& t, Corner c) {
  // Arc k ends at slot k+1; across that edge the boundary continues on the
  // arc that starts at the partner slot.
  const Incidence across = t.partner({c.hexagon, (c.arc + 1) % 3});
  return {across.hexagon, across.slot};
}

SurfaceInvariants surface_invariants(const IdealTriangulation& t) {
  SurfaceInvariants inv;
  inv.chi = t.hexagon_count() - t.edge_count();
  std::vector<std::array<bool, 3>> seen(static_cast<std::size_t>(t.hexagon_count()),
                                        {false, false, false});
  for (int h = 0; h < t.hexagon_count(); ++h) {
    for (int k = 0; k < 3; ++k) {
      if (seen[h][k]) continue;
      std::vector<Corner> component;
      Corner c{h, k};
      while (!seen[c.hexagon][c.arc]) {
        seen[c.hexagon][c.arc] = true;
        component.push_back(c);
        c = next_boundary_corner(t, c);
      }
      inv.boundary_corners.push_back(std::move(component));
    }
  }
  inv.boundary_count = static_cast<int>(inv.boundary_corners.size());
  const int twice_genus = 2 - inv.chi - inv.boundary_count;
  if (twice_genus < 0 || twice_genus % 2 != 0) {
    throw InvalidGluing("boundary count inconsistent with an orientable surface");
  }
  inv.genus = twice_genus / 2;
  return inv;
}

std::vector<EdgeCycle> enumerate_dual_cycles(int node_count,
                                             const std::vector<std::array<int, 2>>& links,
                                             std::size_t limit) {
  std::vector<EdgeCycle> cycles;
  auto push = [&](EdgeCycle c) {
    if (cycles.size() >= limit) {
      throw TooManyCycles("more than " + std::to_string(limit) + " edge cycles");
    }
    cycles.push_back(std::move(c));
  };

  std::vector<std::vector<std::array<int, 2>>> adj(static_cast<std::size_t>(node_count));
  for (std::size_t l = 0; l < links.size(); ++l) {
    const auto [u, v] = links[l];
    if (u == v) {
      push({{static_cast<int>(l)}, {u}});
    } else {
      adj[u].push_back({static_cast<int>(l), v});
      adj[v].push_back({static_cast<int>(l), u});
    }
  }

  // Cycles are rooted at their smallest node; each is met in both directions
  // and kept only when its first link is smaller than its closing link.
  std::vector<int> path_nodes;
  std::vector<int> path_links;
  std::vector<bool> on_path(static_cast<std::size_t>(node_count), false);
  std::vector<bool> link_used(links.size(), false);

  auto dfs = [&](auto&& self, int root, int x) -> void {
    for (const auto& [l, y] : adj[x]) {
      if (link_used[l]) continue;
      if (y == root) {
        if (path_links.empty() || path_links.front() > l) continue;
        EdgeCycle c;
        c.edges = path_links;
        c.edges.push_back(l);
        for (std::size_t i = 1; i < path_nodes.size(); ++i) c.hexagons.push_back(path_nodes[i]);
        c.hexagons.push_back(root);
        push(std::move(c));
      } else if (y > root && !on_path[y]) {
        on_path[y] = true;
        link_used[l] = true;
        path_nodes.push_back(y);
        path_links.push_back(l);
        self(self, root, y);
        path_links.pop_back();
        path_nodes.pop_back();
        link_used[l] = false;
        on_path[y] = false;
      }
    }
  };

  for (int root = 0; root < node_count; ++root) {
    path_nodes.assign(1, root);
    path_links.clear();
    on_path[root] = true;
    dfs(dfs, root, root);
    on_path[root] = false;
  }

  auto key = [](const EdgeCycle& c) {
    std::vector<int> k = c.edges;
    std::sort(k.begin(), k.end());
    return k;
  };
  std::stable_sort(cycles.begin(), cycles.end(), [&](const EdgeCycle& a, const EdgeCycle& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return key(a) < key(b);
  });
  return cycles;
}

std::vector<EdgeCycle> enumerate_edge_cycles(const IdealTriangulation& t, std::size_t limit) {
  std::vector<std::array<int, 2>> links;
  links.reserve(t.edges().size());
  for (const Edge& e : t.edges()) links.push_back({e.sides[0].hexagon, e.sides[1].hexagon});
  return enumerate_dual_cycles(t.hexagon_count(), links, limit);
}

namespace {

// Rotates a cycle so that its walk starts and ends at `node`.
EdgeCycle rotate_to(const EdgeCycle& c, int node) {
  const auto k = c.hexagons.size();
  std::size_t i = 0;
  while (c.hexagons[i] != node) ++i;
  EdgeCycle out;
  for (std::size_t s = 1; s <= k; ++s) {
    out.edges.push_back(c.edges[(i + s) % k]);
    out.hexagons.push_back(c.hexagons[(i + s) % k]);
  }
  return out;
}

}  // namespace

std::vector<EdgeCycle> enumerate_dual_barbells(int node_count,
                                               const std::vector<std::array<int, 2>>& links,
                                               const std::vector<EdgeCycle>& cycles,
                                               std::size_t limit) {
  std::vector<std::vector<std::array<int, 2>>> adj(static_cast<std::size_t>(node_count));
  for (std::size_t l = 0; l < links.size(); ++l) {
    const auto [u, v] = links[l];
    if (u == v) continue;
    adj[u].push_back({static_cast<int>(l), v});
    adj[v].push_back({static_cast<int>(l), u});
  }
  std::vector<std::vector<bool>> members;
  for (const auto& c : cycles) {
    std::vector<bool> in(static_cast<std::size_t>(node_count), false);
    for (int h : c.hexagons) in[h] = true;
    members.push_back(std::move(in));
  }

  std::vector<EdgeCycle> out;
  std::vector<int> path_nodes;
  std::vector<int> path_links;
  std::vector<bool> visited(static_cast<std::size_t>(node_count), false);

  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      const auto& first = members[i];
      const auto& second = members[j];
      bool disjoint = true;
      for (int h : cycles[j].hexagons) disjoint = disjoint && !first[h];
      if (!disjoint) continue;

      auto emit = [&] {
        if (out.size() >= limit) {
          throw TooManyCycles("more than " + std::to_string(limit) + " barbells");
        }
        EdgeCycle w = rotate_to(cycles[i], path_nodes.front());
        for (std::size_t s = 0; s < path_links.size(); ++s) {
          w.edges.push_back(path_links[s]);
          w.hexagons.push_back(path_nodes[s + 1]);
        }
        const EdgeCycle far = rotate_to(cycles[j], path_nodes.back());
        w.edges.insert(w.edges.end(), far.edges.begin(), far.edges.end());
        w.hexagons.insert(w.hexagons.end(), far.hexagons.begin(), far.hexagons.end());
        for (std::size_t s = path_links.size(); s-- > 0;) {
          w.edges.push_back(path_links[s]);
          w.hexagons.push_back(path_nodes[s]);
        }
        out.push_back(std::move(w));
      };

      auto dfs = [&](auto&& self, int x) -> void {
        for (const auto& [l, y] : adj[x]) {
          if (visited[y] || first[y]) continue;
          path_links.push_back(l);
          path_nodes.push_back(y);
          if (second[y]) {
            emit();
          } else {
            visited[y] = true;
            self(self, y);
            visited[y] = false;
          }
          path_nodes.pop_back();
          path_links.pop_back();
        }
      };

      for (int a : cycles[i].hexagons) {
        path_nodes.assign(1, a);
        dfs(dfs, a);
      }
    }
  }
  return out;
}

std::vector<EdgeCycle> enumerate_edge_barbells(const IdealTriangulation& t, std::size_t limit) {
  std::vector<std::array<int, 2>> links;
  links.reserve(t.edges().size());
  for (const Edge& e : t.edges()) links.push_back({e.sides[0].hexagon, e.sides[1].hexagon});
  const auto cycles = enumerate_dual_cycles(t.hexagon_count(), links, limit);
  return enumerate_dual_barbells(t.hexagon_count(), links, cycles, limit);
}

IdealTriangulation combinatorial_flip(const IdealTriangulation& t, int e) {
  if (e < 0 || e >= t.edge_count()) throw DomainError("edge index out of range");
  if (t.self_glued(e)) throw SelfGluedEdge(e);
  const auto [h1, s1] = t.edge(e).sides[0];
  const auto [h2, s2] = t.edge(e).sides[1];

  auto remap = [&](Incidence inc) -> Incidence {
    if (inc.hexagon == h1) {
      if (inc.slot == (s1 + 1) % 3) return {h2, 2};
      if (inc.slot == (s1 + 2) % 3) return {h1, 1};
    } else if (inc.hexagon == h2) {
      if (inc.slot == (s2 + 1) % 3) return {h1, 2};
      if (inc.slot == (s2 + 2) % 3) return {h2, 1};
    }
    return inc;
  };

  std::vector<Edge> edges = t.edges();
  for (int f = 0; f < t.edge_count(); ++f) {
    if (f == e) {
      edges[f].sides = {Incidence{h1, 0}, Incidence{h2, 0}};
    } else {
      for (auto& inc : edges[f].sides) inc = remap(inc);
    }
  }
  return build_triangulation(t.hexagon_count(), std::move(edges));
}

std::vector<int> CellDecomposition::kept_edges() const {
  std::vector<int> kept;
  for (int e = 0; e < base_.edge_count(); ++e) {
    if (!deleted_mask_[e]) kept.push_back(e);
  }
  return kept;
}

CellDecomposition delete_edges(const IdealTriangulation& t, std::vector<int> deleted) {
  std::sort(deleted.begin(), deleted.end());
  if (std::adjacent_find(deleted.begin(), deleted.end()) != deleted.end()) {
    throw DomainError("deleted edge listed twice");
  }
  CellDecomposition c;
  c.base_ = t;
  c.deleted_mask_.assign(static_cast<std::size_t>(t.edge_count()), false);
  UnionFind uf(t.hexagon_count());
  for (int e : deleted) {
    if (e < 0 || e >= t.edge_count()) throw DomainError("deleted edge index out of range");
    c.deleted_mask_[e] = true;
    if (!uf.unite(t.edge(e).sides[0].hexagon, t.edge(e).sides[1].hexagon)) {
      throw NonFillable("deleted edges contain an edge cycle through edge " + std::to_string(e));
    }
  }
  c.deleted_ = std::move(deleted);

  c.cell_of_.assign(static_cast<std::size_t>(t.hexagon_count()), -1);
  for (int h = 0; h < t.hexagon_count(); ++h) {
    const int root = uf.find(h);
    if (c.cell_of_[root] < 0) {
      c.cell_of_[root] = static_cast<int>(c.cells_.size());
      c.cells_.emplace_back();
    }
    c.cell_of_[h] = c.cell_of_[root];
    c.cells_[c.cell_of_[h]].hexagons.push_back(h);
  }

  for (Cell& cell : c.cells_) {
    Incidence start{-1, -1};
    for (int h : cell.hexagons) {
      for (int k = 0; k < 3 && start.hexagon < 0; ++k) {
        if (!c.deleted_mask_[t.edge_at(h, k)]) start = {h, k};
      }
      if (start.hexagon >= 0) break;
    }
    Incidence cur = start;
    do {
      cell.slots.push_back(cur);
      std::vector<Corner> corner{{cur.hexagon, cur.slot}};
      Incidence next{cur.hexagon, (cur.slot + 1) % 3};
      while (c.deleted_mask_[t.edge_at(next.hexagon, next.slot)]) {
        const Incidence across = t.partner(next);
        corner.push_back({across.hexagon, across.slot});
        next = {across.hexagon, (across.slot + 1) % 3};
      }
      cell.corners.push_back(std::move(corner));
      cur = next;
    } while (cur != start);
  }
  return c;
}

Completion triangulate_cells(const CellDecomposition& c, FanAnchor anchor) {
  const IdealTriangulation& base = c.base();
  if (c.deleted().empty()) return {base, {}};

  std::vector<Edge> edges(static_cast<std::size_t>(base.edge_count()));
  // New position of every kept slot of the base.
  std::vector<std::array<Incidence, 3>> moved(static_cast<std::size_t>(base.hexagon_count()));
  std::size_t next_added = 0;
  const std::vector<int>& pool = c.deleted();

  for (const Cell& cell : c.cells()) {
    const int m = cell.side_count();
    if (m == 3) {
      for (const Incidence& inc : cell.slots) moved[inc.hexagon][inc.slot] = inc;
      continue;
    }
    std::size_t lowest = 0;
    auto corner_key = [](const std::vector<Corner>& pieces) {
      return *std::min_element(pieces.begin(), pieces.end());
    };
    for (std::size_t j = 1; j < cell.corners.size(); ++j) {
      if (corner_key(cell.corners[j]) < corner_key(cell.corners[lowest])) lowest = j;
    }
    const int a = ((static_cast<int>(lowest) + anchor.offset) % m + m) % m;
    // Side between corner j and corner j+1 is cell slot j+1.
    auto side_after = [&](int j) { return cell.slots[static_cast<std::size_t>((j + 1) % m)]; };

    std::vector<int> hexes = cell.hexagons;
    std::sort(hexes.begin(), hexes.end());
    int pending_diagonal = -1;
    for (int i = 1; i <= m - 2; ++i) {
      const int hex = hexes[static_cast<std::size_t>(i - 1)];
      // Triangle (c_a, c_{a+i}, c_{a+i+1}): slot0 = a -> a+i, slot1 = a+i -> a+i+1,
      // slot2 = a+i+1 -> a.
      if (i == 1) {
        moved[side_after(a).hexagon][side_after(a).slot] = {hex, 0};
      } else {
        edges[pending_diagonal].sides[1] = {hex, 0};
      }
      const Incidence mid = side_after(a + i);
      moved[mid.hexagon][mid.slot] = {hex, 1};
      if (i == m - 2) {
        const Incidence last = cell.slots[static_cast<std::size_t>(a)];
        moved[last.hexagon][last.slot] = {hex, 2};
      } else {
        pending_diagonal = pool.at(next_added++);
        edges[pending_diagonal].sides[0] = {hex, 2};
      }
    }
  }

  for (int e : c.kept_edges()) {
    for (int s = 0; s < 2; ++s) {
      const Incidence inc = base.edge(e).sides[s];
      edges[e].sides[s] = moved[inc.hexagon][inc.slot];
    }
  }
  return {build_triangulation(base.hexagon_count(), std::move(edges)), pool};
}

std::optional<TriangulationMatch> isomorphic(const IdealTriangulation& a,
                                             const IdealTriangulation& b) {
  if (a.hexagon_count() != b.hexagon_count() || a.edge_count() != b.edge_count()) {
    return std::nullopt;
  }
  auto matches = ribbon_matches(ribbon_of(a), ribbon_of(b), 1);
  if (matches.empty()) return std::nullopt;
  RibbonMatch& m = matches.front();
  return TriangulationMatch{std::move(m.cell_map), std::move(m.rotation), std::move(m.link_map)};
}

std::vector<DecompositionMatch> all_isomorphisms(const CellDecomposition& a,
                                                 const CellDecomposition& b) {
  std::vector<DecompositionMatch> out;
  if (a.base().edge_count() != b.base().edge_count() || a.cells().size() != b.cells().size()) {
    return out;
  }
  for (auto& m : ribbon_matches(ribbon_of(a), ribbon_of(b), kMaxCycles)) {
    out.push_back({std::move(m.cell_map), std::move(m.rotation), std::move(m.link_map)});
  }
  return out;
}

std::optional<DecompositionMatch> isomorphic(const CellDecomposition& a,
                                             const CellDecomposition& b) {
  if (a.base().edge_count() != b.base().edge_count() || a.cells().size() != b.cells().size()) {
    return std::nullopt;
  }
  auto matches = ribbon_matches(ribbon_of(a), ribbon_of(b), 1);
  if (matches.empty()) return std::nullopt;
  auto& m = matches.front();
  return DecompositionMatch{std::move(m.cell_map), std::move(m.rotation), std::move(m.link_map)};
}

}  // namespace teichcells::surface
