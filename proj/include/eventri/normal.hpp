#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eventri/skeleton.hpp"
#include "eventri/symrep.hpp"

namespace eventri {

struct DiscShape {
  int k;                               // size of the smaller side
  std::vector<std::uint32_t> classes;  // smaller-side masks, as in partition_classes
};

/// Normal disc types of an n-simplex grouped by the size of the smaller side.
inline std::vector<DiscShape> enumerate_disc_types(int n) {
  if (n < 3) throw Error(ErrorKind::UnsupportedDimension, "normal disc types need dim >= 3");
  if (n > kMaxDimension) throw Error(ErrorKind::UnsupportedDimension, "dim above " + std::to_string(kMaxDimension));
  std::vector<DiscShape> out;
  for (int k = 1; 2 * k <= n + 1; ++k) out.push_back({k, partition_classes(n, k)});
  return out;
}

/// Flat list of disc-type masks of one simplex, ordered by k and then by mask.
inline std::vector<std::uint32_t> disc_masks(int n) {
  std::vector<std::uint32_t> out;
  for (const auto& shape : enumerate_disc_types(n)) out.insert(out.end(), shape.classes.begin(), shape.classes.end());
  return out;
}

/// Integer weights on the disc types of every simplex.
struct NormalCoordinate {
  int dim = 3;
  int num_simplices = 0;
  std::vector<std::uint32_t> masks;  // disc types of one simplex
  std::vector<long long> weights;    // [simplex * masks.size() + type]

  static NormalCoordinate zero(int dim, int num_simplices) {
    NormalCoordinate x;
    x.dim = dim;
    x.num_simplices = num_simplices;
    x.masks = disc_masks(dim);
    x.weights.assign(x.masks.size() * static_cast<std::size_t>(num_simplices), 0);
    return x;
  }

  int types_per_simplex() const { return static_cast<int>(masks.size()); }

  int index(int simplex, std::uint32_t mask) const {
    const auto it = std::find(masks.begin(), masks.end(), mask);
    if (it == masks.end() || simplex < 0 || simplex >= num_simplices)
      throw Error(ErrorKind::IndexOutOfRange, "no disc type " + std::to_string(mask) + " on simplex " + std::to_string(simplex));
    return simplex * types_per_simplex() + static_cast<int>(it - masks.begin());
  }

  long long& at(int simplex, std::uint32_t mask) { return weights[index(simplex, mask)]; }
  long long at(int simplex, std::uint32_t mask) const { return weights[index(simplex, mask)]; }

  long long total() const {
    long long t = 0;
    for (auto w : weights) t += w;
    return t;
  }
};

/// Restriction of the partition with small side `side` to the facet opposite `facet`, as a
/// canonical facet partition key (the numerically smaller of the two sides). Returns nullopt
/// when one side becomes empty, i.e. the disc misses that facet.
inline std::optional<std::uint32_t> restrict_to_facet(std::uint32_t side, int facet, int n) {
  const std::uint32_t facet_letters = ((1u << (n + 1)) - 1) & ~(1u << facet);
  const std::uint32_t a = side & facet_letters;
  const std::uint32_t b = ~side & facet_letters;
  if (a == 0 || b == 0) return std::nullopt;
  return std::min(a, b);
}

struct MatchingEquation {
  int s, i, t, j;  // facet pair, stored once from the first endpoint in dual-graph order
  std::uint32_t facet_disc;                // canonical key on facet i of s
  std::vector<std::pair<int, int>> terms;  // (variable, coefficient), zero coefficients dropped
};

struct MatchingSystem {
  int dim = 3;
  int num_simplices = 0;
  std::vector<std::uint32_t> masks;
  std::vector<MatchingEquation> equations;

  int num_variables() const { return static_cast<int>(masks.size()) * num_simplices; }
};

/// One equation per facet pair and per facet disc type: the number of discs meeting the facet in
/// that type equals the number meeting the paired facet in the image type.
inline MatchingSystem build_matching_system(const Triangulation& tri) {
  const int n = tri.dim();
  MatchingSystem sys;
  sys.dim = n;
  sys.num_simplices = tri.num_simplices();
  sys.masks = disc_masks(n);
  const int per = static_cast<int>(sys.masks.size());
  const auto graph = dual_graph(tri);
  for (const auto& edge : graph.edges) {
    const Permutation& pi = tri.vertex_map(edge.s, edge.i);
    const std::uint32_t facet_letters = tri.full_mask() & ~(1u << edge.i);
    // canonical facet disc types: subsets of the facet letters that are the smaller key
    std::vector<std::uint32_t> facet_discs;
    for (std::uint32_t m = 1; m < (1u << (n + 1)); ++m) {
      if ((m & facet_letters) != m || m == facet_letters) continue;
      if (m < (facet_letters & ~m)) facet_discs.push_back(m);
    }
    for (std::uint32_t mu : facet_discs) {
      const std::uint32_t image = pi.apply_mask(mu);
      const std::uint32_t image_key = std::min(image, (tri.full_mask() & ~(1u << edge.j)) & ~image);
      std::map<int, int> coef;
      for (int v = 0; v < per; ++v) {
        if (restrict_to_facet(sys.masks[v], edge.i, n) == mu) coef[edge.s * per + v] += 1;
        if (restrict_to_facet(sys.masks[v], edge.j, n) == image_key) coef[edge.t * per + v] -= 1;
      }
      MatchingEquation eq{edge.s, edge.i, edge.t, edge.j, mu, {}};
      for (auto [var, c] : coef)
        if (c != 0) eq.terms.emplace_back(var, c);
      sys.equations.push_back(std::move(eq));
    }
  }
  return sys;
}

struct SolutionCheck {
  bool ok = true;
  std::optional<int> violated;  // index of the first violated equation
  long long residual = 0;
};

inline SolutionCheck verify_solution(const MatchingSystem& sys, const NormalCoordinate& x) {
  if (static_cast<int>(x.weights.size()) != sys.num_variables())
    throw Error(ErrorKind::PreconditionViolation, "coordinate has the wrong number of variables");
  for (auto w : x.weights)
    if (w < 0) throw Error(ErrorKind::PreconditionViolation, "weights must be non-negative");
  for (int e = 0; e < static_cast<int>(sys.equations.size()); ++e) {
    long long r = 0;
    for (auto [var, c] : sys.equations[e].terms) r += c * x.weights[var];
    if (r != 0) return {false, e, r};
  }
  return {};
}

/// Weight 1 on every disc type whose smaller side has k elements.
inline NormalCoordinate canonical_solution(const Triangulation& tri, int k) {
  const int n = tri.dim();
  if (k < 1 || 2 * k > n + 1)
    throw Error(ErrorKind::IndexOutOfRange, "k must satisfy 1 <= k <= (n+1)/2, got " + std::to_string(k));
  auto x = NormalCoordinate::zero(n, tri.num_simplices());
  for (int s = 0; s < tri.num_simplices(); ++s)
    for (int v = 0; v < x.types_per_simplex(); ++v)
      if (std::popcount(x.masks[v]) == k) x.weights[s * x.types_per_simplex() + v] = 1;
  return x;
}

/// Two partitions can be realised disjointly iff one side of one is disjoint from one side of the other.
inline bool compatible(std::uint32_t a, std::uint32_t c, std::uint32_t full) {
  const std::uint32_t b = full & ~a;
  const std::uint32_t d = full & ~c;
  return !(a & c) || !(a & d) || !(b & c) || !(b & d);
}

struct Cell {
  int simplex;
  std::uint32_t side;  // smaller side of the partition
};

struct PieceLink {
  int cell = -1;  // -1 when the disc misses the facet
  int facet = -1;
};

struct HypersurfaceComponent {
  std::vector<int> cells;
  bool embedded = true;
};

/// The pseudo-manifold assembled from one disc per unit of weight, glued across facets.
struct Hypersurface {
  int dim = 3;
  std::vector<Cell> cells;
  std::vector<std::vector<PieceLink>> pieces;  // [cell][facet]
  std::vector<int> component_of;
  std::vector<HypersurfaceComponent> components;

  int num_pieces(int cell) const {
    int c = 0;
    for (const auto& p : pieces[cell]) c += p.cell >= 0;
    return c;
  }
};

/// Assembles a 0/1 admissible coordinate. Across a facet a disc is paired with the perspectivity
/// image of its partition when that type is present, otherwise with the other type meeting the
/// facet in the same way.
inline Hypersurface assemble_hypersurface(const Triangulation& tri, const NormalCoordinate& x) {
  const int n = tri.dim();
  if (x.dim != n || x.num_simplices != tri.num_simplices())
    throw Error(ErrorKind::PreconditionViolation, "coordinate does not belong to this triangulation");
  for (auto w : x.weights)
    if (w != 0 && w != 1) throw Error(ErrorKind::WeightsNotZeroOne, "weight " + std::to_string(w) + " is not 0 or 1");
  const auto check = verify_solution(build_matching_system(tri), x);
  if (!check.ok)
    throw Error(ErrorKind::InadmissibleSolution, "matching equation " + std::to_string(*check.violated) + " fails");
  Hypersurface h;
  h.dim = n;
  std::map<std::pair<int, std::uint32_t>, int> cell_of;
  for (int s = 0; s < tri.num_simplices(); ++s)
    for (auto m : x.masks)
      if (x.at(s, m) == 1) {
        cell_of[{s, m}] = static_cast<int>(h.cells.size());
        h.cells.push_back({s, m});
      }
  h.pieces.assign(h.cells.size(), std::vector<PieceLink>(n + 1));
  UnionFind uf(static_cast<int>(h.cells.size()));
  for (int c = 0; c < static_cast<int>(h.cells.size()); ++c) {
    const auto [s, side] = h.cells[c];
    for (int i = 0; i <= n; ++i) {
      if (!restrict_to_facet(side, i, n)) continue;
      const int t = tri.target_simplex(s, i);
      const Permutation& pi = tri.vertex_map(s, i);
      const int j = pi(i);
      const std::uint32_t image = pi.apply_mask(side);
      const std::uint32_t first = normalise_partition(image, n);
      const std::uint32_t second = normalise_partition(image ^ (1u << j), n);
      int partner = -1;
      if (auto it = cell_of.find({t, first}); it != cell_of.end()) partner = it->second;
      else if (auto it2 = cell_of.find({t, second}); it2 != cell_of.end()) partner = it2->second;
      if (partner < 0) throw Error(ErrorKind::InternalError, "unpaired disc piece");
      h.pieces[c][i] = {partner, j};
      uf.unite(c, partner);
    }
  }
  int count = 0;
  h.component_of = uf.labels(&count);
  h.components.resize(count);
  for (int c = 0; c < static_cast<int>(h.cells.size()); ++c) h.components[h.component_of[c]].cells.push_back(c);
  for (auto& comp : h.components)
    for (std::size_t a = 0; a < comp.cells.size(); ++a)
      for (std::size_t b = a + 1; b < comp.cells.size(); ++b) {
        const Cell& p = h.cells[comp.cells[a]];
        const Cell& q = h.cells[comp.cells[b]];
        if (p.simplex == q.simplex && !compatible(p.side, q.side, tri.full_mask())) comp.embedded = false;
      }
  return h;
}

struct BranchedOrbit {
  int orbit;                       // index in the (n-2)-face table
  std::vector<int> rotation_cycles;  // cycle lengths of the circuit map on transverse discs
};

/// For every (n-2)-face orbit, follows each disc meeting the face once around it. The face is a
/// branch point when some disc comes back as a different disc.
inline std::vector<BranchedOrbit> branch_locus(const Triangulation& tri, const Hypersurface& h) {
  const int n = tri.dim();
  const auto faces = face_orbits(tri, n - 2);
  std::vector<BranchedOrbit> out;
  for (int o = 0; o < faces.size(); ++o) {
    const FaceIncidence start = faces.orbits()[o].incidences.front();
    const std::uint32_t missing = tri.full_mask() & ~start.vertices;
    const int first_exit = std::countr_zero(missing);
    std::vector<int> transverse;
    for (int c = 0; c < static_cast<int>(h.cells.size()); ++c) {
      const Cell& cell = h.cells[c];
      if (cell.simplex == start.simplex && (cell.side & start.vertices) && (~cell.side & start.vertices)) transverse.push_back(c);
    }
    std::map<int, int> after;
    for (int c0 : transverse) {
      int c = c0;
      int cur = start.simplex;
      std::uint32_t face = start.vertices;
      int exit = first_exit;
      do {
        const Permutation& pi = tri.vertex_map(cur, exit);
        const PieceLink link = h.pieces[c][exit];
        c = link.cell;
        cur = tri.target_simplex(cur, exit);
        face = pi.apply_mask(face);
        exit = std::countr_zero(tri.full_mask() & ~face & ~(1u << link.facet));
      } while (!(cur == start.simplex && face == start.vertices && exit == first_exit));
      after[c0] = c;
    }
    std::vector<int> cycles;
    std::map<int, bool> seen;
    bool branched = false;
    for (int c0 : transverse) {
      if (seen[c0]) continue;
      int len = 0;
      for (int c = c0; !seen[c]; c = after.at(c)) {
        seen[c] = true;
        ++len;
      }
      cycles.push_back(len);
      branched |= len > 1;
    }
    if (branched) out.push_back({o, cycles});
  }
  return out;
}

struct IncompatiblePair {
  int simplex;
  std::uint32_t first, second;
};

/// True iff in every simplex all positive-weight disc types are pairwise compatible.
inline std::optional<IncompatiblePair> find_incompatible_pair(const NormalCoordinate& x) {
  const std::uint32_t full = (1u << (x.dim + 1)) - 1;
  for (int s = 0; s < x.num_simplices; ++s)
    for (std::size_t a = 0; a < x.masks.size(); ++a)
      for (std::size_t b = a + 1; b < x.masks.size(); ++b)
        if (x.at(s, x.masks[a]) > 0 && x.at(s, x.masks[b]) > 0 && !compatible(x.masks[a], x.masks[b], full))
          return IncompatiblePair{s, x.masks[a], x.masks[b]};
  return std::nullopt;
}

inline bool embedding_check(const NormalCoordinate& x) { return !find_incompatible_pair(x).has_value(); }

struct ComponentRepReport {
  int k = 2;
  int components = 0;
  int embedded_components = 0;
  int image_orbits = 0;   // orbits of the induced image on the partition classes
  int fixed_classes = 0;  // classes fixed by the whole induced image
  bool components_match_orbits = false;
  bool embedded_match_fixed = false;
  GroupInfo induced_image;
};

/// Compares the canonical (k, n-k+1)-hypersurface with the induced representation.
inline ComponentRepReport component_rep_correspondence(const Triangulation& tri, const RepReport& rep, int k) {
  if (k < 2) throw Error(ErrorKind::IndexOutOfRange, "k must be at least 2");
  const auto induced = induced_representation(rep, k);
  const auto h = assemble_hypersurface(tri, canonical_solution(tri, k));
  ComponentRepReport out;
  out.k = k;
  out.components = static_cast<int>(h.components.size());
  for (const auto& c : h.components) out.embedded_components += c.embedded;
  out.image_orbits = induced.image.orbit_count;
  for (int c = 0; c < induced.degree; ++c) {
    bool fixed = true;
    for (const auto& g : induced.generators) fixed &= g.perm(c) == c;
    out.fixed_classes += fixed;
  }
  out.components_match_orbits = out.components == out.image_orbits;
  out.embedded_match_fixed = out.embedded_components == out.fixed_classes;
  out.induced_image = induced.image;
  return out;
}

struct SurfaceComponent {
  int cells = 0;
  int edges = 0;
  int vertices = 0;
  int euler_characteristic = 0;
  bool orientable = true;
  bool two_sided = true;
  std::string label;
};

inline std::string surface_label(int chi, bool orientable) {
  if (orientable) {
    if (chi == 2) return "sphere";
    if (chi == 0) return "torus";
    if (chi < 0 && chi % 2 == 0) return "orientable genus " + std::to_string((2 - chi) / 2);
    return "orientable chi " + std::to_string(chi);
  }
  if (chi == 1) return "projective plane";
  if (chi == 0) return "Klein bottle";
  if (chi < 0) return "non-orientable genus " + std::to_string(2 - chi);
  return "non-orientable chi " + std::to_string(chi);
}

namespace detail {

/// Corners of a disc in dim 3 in cyclic order around its boundary, as tetrahedron edge masks.
inline std::vector<std::uint32_t> disc_corner_cycle(std::uint32_t side) {
  std::vector<int> a, b;
  for (int v = 0; v < 4; ++v) (side & (1u << v) ? a : b).push_back(v);
  auto edge = [](int u, int v) { return (1u << u) | (1u << v); };
  if (a.size() == 1) return {edge(a[0], b[0]), edge(a[0], b[1]), edge(a[0], b[2])};
  return {edge(a[0], b[0]), edge(a[0], b[1]), edge(a[1], b[1]), edge(a[1], b[0])};
}

}  // namespace detail

/// Euler characteristic, orientability and sidedness of each component (dim 3 only).
inline std::vector<SurfaceComponent> surface_analysis(const Triangulation& tri, const Hypersurface& h) {
  if (tri.dim() != 3) throw Error(ErrorKind::UnsupportedDimension, "surface analysis is implemented for dim 3 only");
  const int num_cells = static_cast<int>(h.cells.size());
  // corner nodes: (cell, tetrahedron edge index 0..5)
  const auto edge_masks = subsets_of_size(4, 2);
  auto edge_index = [&](std::uint32_t m) {
    return static_cast<int>(std::find(edge_masks.begin(), edge_masks.end(), m) - edge_masks.begin());
  };
  UnionFind corners(num_cells * 6);
  ParityUnionFind orient(num_cells);
  ParityUnionFind sides(num_cells);
  std::vector<bool> orientable(h.components.size(), true);
  std::vector<bool> two_sided(h.components.size(), true);
  std::vector<int> piece_count(h.components.size(), 0);
  for (int c = 0; c < num_cells; ++c) {
    const Cell& cell = h.cells[c];
    const auto cycle = detail::disc_corner_cycle(cell.side);
    for (int i = 0; i < 4; ++i) {
      const PieceLink link = h.pieces[c][i];
      if (link.cell < 0) continue;
      ++piece_count[h.component_of[c]];
      const Permutation& pi = tri.vertex_map(cell.simplex, i);
      const Cell& other = h.cells[link.cell];
      const auto other_cycle = detail::disc_corner_cycle(other.side);
      // the arc on facet i joins the two corners whose edges avoid corner i
      std::vector<std::uint32_t> arc;
      for (auto e : cycle)
        if (!(e & (1u << i))) arc.push_back(e);
      for (auto e : arc) corners.unite(c * 6 + edge_index(e), link.cell * 6 + edge_index(pi.apply_mask(e)));
      auto forward = [](const std::vector<std::uint32_t>& cyc, std::uint32_t p, std::uint32_t q) {
        const auto at = std::find(cyc.begin(), cyc.end(), p) - cyc.begin();
        return cyc[(at + 1) % cyc.size()] == q;
      };
      const bool here = forward(cycle, arc[0], arc[1]);
      const bool there = forward(other_cycle, pi.apply_mask(arc[0]), pi.apply_mask(arc[1]));
      if (!orient.unite(c, link.cell, here == there ? 1 : 0)) orientable[h.component_of[c]] = false;
      const std::uint32_t near_side = pi.apply_mask(cell.side & ~(1u << i));
      const bool same_side = (near_side & other.side) == near_side;
      if (!sides.unite(c, link.cell, same_side ? 0 : 1)) two_sided[h.component_of[c]] = false;
    }
  }
  std::vector<SurfaceComponent> out(h.components.size());
  std::vector<int> vertex_count(h.components.size(), 0);
  std::vector<char> counted(num_cells * 6, 0);
  for (int c = 0; c < num_cells; ++c)
    for (auto e : detail::disc_corner_cycle(h.cells[c].side)) {
      const int root = corners.find(c * 6 + edge_index(e));
      if (counted[root]) continue;
      counted[root] = 1;
      ++vertex_count[h.component_of[c]];
    }
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto& comp = out[k];
    comp.cells = static_cast<int>(h.components[k].cells.size());
    comp.edges = piece_count[k] / 2;
    comp.vertices = vertex_count[k];
    comp.euler_characteristic = comp.vertices - comp.edges + comp.cells;
    comp.orientable = orientable[k];
    comp.two_sided = two_sided[k];
    comp.label = surface_label(comp.euler_characteristic, comp.orientable);
  }
  return out;
}

/// Largest k > 1 with trivial induced image on an even one-vertex triangulation; a lower bound
/// for the rank of the first homology with Z2 coefficients. Returns 0 when no k qualifies.
inline int z2_rank_bound(const Triangulation& tri, const RepReport& rep) {
  if (!is_even(tri).even || vertex_count(tri) != 1) return 0;
  const int n = tri.dim();
  for (int k = (n + 1) / 2; k >= 2; --k)
    if (induced_representation(rep, k).image.order == 1) return k;
  return 0;
}

}  // namespace eventri
