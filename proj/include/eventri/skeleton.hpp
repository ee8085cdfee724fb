#pragma once

#include <bit>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "eventri/error.hpp"
#include "eventri/triangulation.hpp"
#include "eventri/union_find.hpp"

namespace eventri {

/// Masks of all (k+1)-subsets of {0..n}, in increasing numeric order.
inline std::vector<std::uint32_t> subsets_of_size(int n_letters, int size) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << n_letters); ++m)
    if (std::popcount(m) == size) out.push_back(m);
  return out;
}

struct FaceIncidence {
  int simplex;
  std::uint32_t vertices;  // corners of the simplex spanning the face

  friend bool operator==(const FaceIncidence&, const FaceIncidence&) = default;
  friend auto operator<=>(const FaceIncidence&, const FaceIncidence&) = default;
};

struct FaceOrbit {
  std::vector<FaceIncidence> incidences;  // sorted
  int degree() const { return static_cast<int>(incidences.size()); }
};

/// The k-faces of the quotient: orbits of k-face incidences under the facet gluings.
class FaceOrbitTable {
 public:
  FaceOrbitTable(int dim, int k, int num_simplices) : dim_(dim), k_(k), faces_(subsets_of_size(dim + 1, k + 1)) {
    index_of_.assign(1u << (dim + 1), -1);
    for (std::size_t f = 0; f < faces_.size(); ++f) index_of_[faces_[f]] = static_cast<int>(f);
    orbit_of_.assign(static_cast<std::size_t>(num_simplices) * faces_.size(), -1);
  }

  int k() const { return k_; }
  int dim() const { return dim_; }
  const std::vector<FaceOrbit>& orbits() const { return orbits_; }
  int size() const { return static_cast<int>(orbits_.size()); }

  int orbit_of(int simplex, std::uint32_t vertices) const {
    return orbit_of_[static_cast<std::size_t>(simplex) * faces_.size() + index_of_.at(vertices)];
  }

  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& o : orbits_) out.push_back(o.degree());
    return out;
  }

  int total_incidences() const {
    int total = 0;
    for (const auto& o : orbits_) total += o.degree();
    return total;
  }

 private:
  friend FaceOrbitTable face_orbits(const Triangulation&, int);

  int dim_;
  int k_;
  std::vector<std::uint32_t> faces_;
  std::vector<int> index_of_;
  std::vector<int> orbit_of_;
  std::vector<FaceOrbit> orbits_;
};

/// Union-find closure of k-face incidences under the gluings. Orbits are numbered in order of
/// their first incidence (simplex ascending, then vertex mask ascending).
inline FaceOrbitTable face_orbits(const Triangulation& tri, int k) {
  const int n = tri.dim();
  if (k < 0 || k > n - 1)
    throw Error(ErrorKind::IndexOutOfRange, "k must lie in [0, " + std::to_string(n - 1) + "], got " + std::to_string(k));
  FaceOrbitTable table(n, k, tri.num_simplices());
  const int per = static_cast<int>(table.faces_.size());
  UnionFind uf(tri.num_simplices() * per);
  for (int s = 0; s < tri.num_simplices(); ++s) {
    for (int i = 0; i <= n; ++i) {
      const int t = tri.target_simplex(s, i);
      const Permutation& pi = tri.vertex_map(s, i);
      for (int f = 0; f < per; ++f) {
        const std::uint32_t mask = table.faces_[f];
        if (mask & (1u << i)) continue;
        uf.unite(s * per + f, t * per + table.index_of_[pi.apply_mask(mask)]);
      }
    }
  }
  int count = 0;
  auto labels = uf.labels(&count);
  table.orbits_.resize(count);
  for (int s = 0; s < tri.num_simplices(); ++s) {
    for (int f = 0; f < per; ++f) {
      const int id = s * per + f;
      table.orbit_of_[id] = labels[id];
      table.orbits_[labels[id]].incidences.push_back({s, table.faces_[f]});
    }
  }
  return table;
}

inline int vertex_count(const Triangulation& tri) { return face_orbits(tri, 0).size(); }

struct EvennessResult {
  bool even = true;
  std::optional<int> odd_orbit;         // index into the (n-2)-face table
  std::optional<FaceIncidence> witness;  // one incidence of that orbit
  int witness_degree = 0;
};

/// True iff every (n-2)-face orbit has even degree; otherwise reports the first odd orbit.
inline EvennessResult is_even(const Triangulation& tri) {
  const auto table = face_orbits(tri, tri.dim() - 2);
  for (int o = 0; o < table.size(); ++o) {
    const auto& orbit = table.orbits()[o];
    if (orbit.degree() % 2 != 0) return {false, o, orbit.incidences.front(), orbit.degree()};
  }
  return {};
}

struct DualEdge {
  int s, i;  // first endpoint in scan order
  int t, j;
  bool tree = false;
};

/// Dual 1-skeleton with a breadth-first spanning tree. Facets of each simplex are scanned in
/// descending index order; with this convention the tree leaves the base through its top facet.
struct DualGraph {
  int base = 0;
  int num_nodes = 0;
  std::vector<DualEdge> edges;
  std::vector<std::vector<int>> edge_of;  // [simplex][facet] -> edge index
  std::vector<int> parent_simplex;        // -1 at the base
  std::vector<int> parent_facet;          // facet of the parent leading to this node
  std::vector<int> bfs_order;

  int tree_edge_count() const {
    int c = 0;
    for (const auto& e : edges) c += e.tree;
    return c;
  }

  std::vector<int> non_tree_edges() const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (!edges[e].tree) out.push_back(e);
    return out;
  }
};

inline DualGraph dual_graph(const Triangulation& tri, int base = 0) {
  const int n = tri.dim();
  const int N = tri.num_simplices();
  if (base < 0 || base >= N) throw Error(ErrorKind::IndexOutOfRange, "base simplex " + std::to_string(base) + " out of range");
  DualGraph g;
  g.base = base;
  g.num_nodes = N;
  g.edge_of.assign(N, std::vector<int>(n + 1, -1));
  for (int s = 0; s < N; ++s) {
    for (int i = n; i >= 0; --i) {
      if (g.edge_of[s][i] >= 0) continue;
      const int t = tri.target_simplex(s, i);
      const int j = tri.target_facet(s, i);
      g.edge_of[s][i] = g.edge_of[t][j] = static_cast<int>(g.edges.size());
      g.edges.push_back({s, i, t, j, false});
    }
  }
  g.parent_simplex.assign(N, -1);
  g.parent_facet.assign(N, -1);
  std::vector<char> seen(N, 0);
  std::deque<int> queue{base};
  seen[base] = 1;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    g.bfs_order.push_back(s);
    for (int i = n; i >= 0; --i) {
      const int t = tri.target_simplex(s, i);
      if (seen[t]) continue;
      seen[t] = 1;
      g.parent_simplex[t] = s;
      g.parent_facet[t] = i;
      g.edges[g.edge_of[s][i]].tree = true;
      queue.push_back(t);
    }
  }
  return g;
}

/// Signs (+1/-1) per simplex making every gluing orientation-reversing, if such signs exist.
inline std::optional<std::vector<int>> orientation(const Triangulation& tri) {
  const int N = tri.num_simplices();
  std::vector<int> sign(N, 0);
  sign[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (int i = 0; i <= tri.dim(); ++i) {
      const int t = tri.target_simplex(s, i);
      const int want = -tri.vertex_map(s, i).sign() * sign[s];
      if (sign[t] == 0) {
        sign[t] = want;
        queue.push_back(t);
      } else if (sign[t] != want) {
        return std::nullopt;
      }
    }
  }
  return sign;
}

inline bool orientability(const Triangulation& tri) { return orientation(tri).has_value(); }

/// Euler characteristic of each vertex link (n = 3), indexed like face_orbits(tri, 0).
/// The link of a vertex is assembled from flags (face, corner): edges give link vertices,
/// triangles give link edges, tetrahedra give link triangles.
inline std::vector<int> vertex_link_euler(const Triangulation& tri) {
  if (tri.dim() != 3) throw Error(ErrorKind::UnsupportedDimension, "vertex links are implemented for dim 3 only");
  const int n = tri.dim();
  const int letters = n + 1;
  const int per = (1 << letters) * letters;
  const auto vertices = face_orbits(tri, 0);
  std::vector<int> chi(vertices.size(), 0);
  auto flag_id = [&](int s, std::uint32_t mask, int c) { return s * per + static_cast<int>(mask) * letters + c; };
  for (int k = 1; k <= n; ++k) {
    UnionFind uf(tri.num_simplices() * per);
    const auto masks = subsets_of_size(letters, k + 1);
    for (int s = 0; s < tri.num_simplices(); ++s) {
      for (int i = 0; i <= n; ++i) {
        const int t = tri.target_simplex(s, i);
        const Permutation& pi = tri.vertex_map(s, i);
        for (auto mask : masks) {
          if (mask & (1u << i)) continue;
          for (int c = 0; c < letters; ++c)
            if (mask & (1u << c)) uf.unite(flag_id(s, mask, c), flag_id(t, pi.apply_mask(mask), pi(c)));
        }
      }
    }
    std::vector<char> counted(uf.size(), 0);
    const int sign = (k % 2 == 1) ? 1 : -1;
    for (int s = 0; s < tri.num_simplices(); ++s) {
      for (auto mask : masks) {
        for (int c = 0; c < letters; ++c) {
          if (!(mask & (1u << c))) continue;
          const int root = uf.find(flag_id(s, mask, c));
          if (counted[root]) continue;
          counted[root] = 1;
          chi[vertices.orbit_of(s, 1u << c)] += sign;
        }
      }
    }
  }
  return chi;
}

}  // namespace eventri
