#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eventri/normal.hpp"
#include "eventri/symrep.hpp"

namespace eventri {

/// Images of the dual-graph generators (non-tree edges in dual_graph order) as permutations of
/// the sheets {0..degree-1}.
struct PermutationAction {
  int degree = 1;
  int base = 0;
  std::vector<Permutation> images;
  std::string source = "explicit";
};

inline PermutationAction trivial_action(const Triangulation& tri, int base = 0) {
  const auto graph = dual_graph(tri, base);
  PermutationAction a;
  a.base = base;
  a.source = "trivial";
  a.images.assign(graph.non_tree_edges().size(), Permutation::identity(1));
  return a;
}

/// The representation itself, acting on its letters (corners or partition classes).
inline PermutationAction representation_action(const RepReport& rep) {
  PermutationAction a;
  a.degree = rep.degree;
  a.base = rep.base;
  a.source = rep.partition_size == 1 ? "canonical" : "induced:" + std::to_string(rep.partition_size);
  for (const auto& g : rep.generators) a.images.push_back(g.perm);
  return a;
}

/// Left-regular action of the image group on itself: a generator g sends h to g o h.
inline PermutationAction regular_action(const RepReport& rep) {
  const auto& elements = rep.image.elements;
  std::map<Permutation, int> index;
  for (std::size_t e = 0; e < elements.size(); ++e) index[elements[e]] = static_cast<int>(e);
  PermutationAction a;
  a.degree = static_cast<int>(elements.size());
  a.base = rep.base;
  a.source = rep.partition_size == 1 ? "regular:canonical" : "regular:induced:" + std::to_string(rep.partition_size);
  for (const auto& g : rep.generators) {
    std::vector<int> images(elements.size());
    for (std::size_t e = 0; e < elements.size(); ++e) images[e] = index.at(g.perm * elements[e]);
    a.images.push_back(Permutation(std::move(images)));
  }
  return a;
}

inline PermutationAction action_from_json(const nlohmann::json& doc) {
  try {
    PermutationAction a;
    a.degree = doc.at("degree").get<int>();
    a.base = doc.value("base", 0);
    if (a.degree < 1) throw Error(ErrorKind::Syntax, "action degree must be positive");
    for (const auto& img : doc.at("images")) {
      auto v = img.get<std::vector<int>>();
      if (static_cast<int>(v.size()) != a.degree) throw Error(ErrorKind::Syntax, "action image has the wrong length");
      a.images.push_back(Permutation(std::move(v)));
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, e.what());
  }
}

namespace detail {

/// Sheet permutation applied when crossing facet `facet` of `simplex`.
inline Permutation crossing_action(const DualGraph& graph, const PermutationAction& a,
                                   const std::vector<int>& generator_of_edge, int simplex, int facet) {
  const int e = graph.edge_of[simplex][facet];
  const DualEdge& edge = graph.edges[e];
  if (edge.tree) return Permutation::identity(a.degree);
  const Permutation& g = a.images[generator_of_edge[e]];
  if (edge.s == simplex && edge.i == facet) return g;
  return g.inverse();
}

inline std::vector<int> generator_index(const DualGraph& graph) {
  std::vector<int> out(graph.edges.size(), -1);
  int g = 0;
  for (int e : graph.non_tree_edges()) out[e] = g++;
  return out;
}

}  // namespace detail

/// Checks the action is trivial around every (n-2)-face; throws RelatorViolation otherwise.
inline void check_action_relators(const Triangulation& tri, const PermutationAction& a) {
  const auto graph = dual_graph(tri, a.base);
  const auto gens = detail::generator_index(graph);
  if (a.images.size() != graph.non_tree_edges().size())
    throw Error(ErrorKind::PreconditionViolation, "action has " + std::to_string(a.images.size()) + " images but there are " +
                                                      std::to_string(graph.non_tree_edges().size()) + " generators");
  for (const auto& img : a.images)
    if (img.size() != a.degree) throw Error(ErrorKind::PreconditionViolation, "action image of the wrong degree");
  const auto faces = face_orbits(tri, tri.dim() - 2);
  for (int o = 0; o < faces.size(); ++o) {
    const FaceIncidence start = faces.orbits()[o].incidences.front();
    const int first_exit = std::countr_zero(tri.full_mask() & ~start.vertices);
    int cur = start.simplex;
    std::uint32_t face = start.vertices;
    int exit = first_exit;
    Permutation acc = Permutation::identity(a.degree);
    do {
      acc = detail::crossing_action(graph, a, gens, cur, exit) * acc;
      const Permutation& pi = tri.vertex_map(cur, exit);
      const int entry = pi(exit);
      cur = tri.target_simplex(cur, exit);
      face = pi.apply_mask(face);
      exit = std::countr_zero(tri.full_mask() & ~face & ~(1u << entry));
    } while (!(cur == start.simplex && face == start.vertices && exit == first_exit));
    if (!acc.is_identity())
      throw Error(ErrorKind::RelatorViolation, "action around (n-2)-face orbit " + std::to_string(o) + " is " +
                                                   acc.to_cycle_string() + ", not the identity");
  }
}

struct CoverComponent {
  Triangulation triangulation;
  std::vector<std::pair<int, int>> projection;  // per simplex: (base simplex, sheet)
};

/// Covering triangulation. Sheet a of base simplex s is cover simplex a * N + s before the split
/// into connected components.
struct CoverTriangulation {
  int sheets = 1;
  std::string source;
  std::vector<CoverComponent> components;

  const Triangulation& result() const {
    if (components.size() != 1) throw Error(ErrorKind::PreconditionViolation, "the cover is not connected");
    return components.front().triangulation;
  }
};

inline CoverTriangulation build_cover(const Triangulation& tri, const PermutationAction& a) {
  check_action_relators(tri, a);
  const auto graph = dual_graph(tri, a.base);
  const auto gens = detail::generator_index(graph);
  const int N = tri.num_simplices();
  const int d = a.degree;
  const int total = N * d;
  // global table, then split by connectivity
  std::vector<std::vector<Triangulation::Entry>> table(total);
  UnionFind uf(total);
  for (int sheet = 0; sheet < d; ++sheet)
    for (int s = 0; s < N; ++s)
      for (int i = 0; i <= tri.dim(); ++i) {
        const int to_sheet = detail::crossing_action(graph, a, gens, s, i)(sheet);
        const int target = to_sheet * N + tri.target_simplex(s, i);
        table[sheet * N + s].push_back({target, tri.vertex_map(s, i).images()});
        uf.unite(sheet * N + s, target);
      }
  int count = 0;
  const auto label = uf.labels(&count);
  CoverTriangulation cover;
  cover.sheets = d;
  cover.source = a.source;
  std::vector<std::vector<int>> members(count);
  for (int c = 0; c < total; ++c) members[label[c]].push_back(c);
  for (const auto& m : members) {
    std::map<int, int> local;
    for (int c : m) local[c] = static_cast<int>(local.size());
    std::vector<std::vector<Triangulation::Entry>> sub;
    std::vector<std::pair<int, int>> projection;
    for (int c : m) {
      auto row = table[c];
      for (auto& e : row) e.target = local.at(e.target);
      sub.push_back(std::move(row));
      projection.emplace_back(c % N, c / N);
    }
    cover.components.push_back({Triangulation(tri.dim(), std::move(sub)), std::move(projection)});
  }
  return cover;
}

struct LiftedSurface {
  int components = 0;
  int embedded = 0;
  int total_euler_characteristic = 0;
};

struct CoverReport {
  int sheets = 1;
  int simplices = 0;
  int components = 0;
  bool connected = true;
  bool even = true;
  int vertex_count = 0;
  bool projection_ok = true;
  std::optional<bool> induced_trivial;       // in each component, for actions built from an induced image
  std::optional<LiftedSurface> quad_surface;  // dim 3, even covers
};

/// Re-derives the properties of a cover directly from its triangulation.
inline CoverReport verify_cover(const Triangulation& base, const CoverTriangulation& cover) {
  CoverReport r;
  r.sheets = cover.sheets;
  r.components = static_cast<int>(cover.components.size());
  r.connected = r.components == 1;
  int induced_k = 0;
  if (cover.source.rfind("regular:induced:", 0) == 0) induced_k = std::stoi(cover.source.substr(16));
  LiftedSurface lifted;
  bool have_surface = base.dim() == 3;
  for (const auto& comp : cover.components) {
    const auto& t = comp.triangulation;
    r.simplices += t.num_simplices();
    r.vertex_count += vertex_count(t);
    const bool even = is_even(t).even;
    r.even = r.even && even;
    for (int c = 0; c < t.num_simplices(); ++c)
      for (int i = 0; i <= t.dim(); ++i) {
        const auto [s, sheet] = comp.projection[c];
        const auto [ts, tsheet] = comp.projection[t.target_simplex(c, i)];
        if (ts != base.target_simplex(s, i) || t.vertex_map(c, i) != base.vertex_map(s, i)) r.projection_ok = false;
        (void)sheet;
        (void)tsheet;
      }
    if (even && induced_k > 0) {
      const bool trivial = induced_representation(canonical_representation(t), induced_k).image.order == 1;
      r.induced_trivial = r.induced_trivial.value_or(true) && trivial;
    }
    if (have_surface) {
      const auto h = assemble_hypersurface(t, canonical_solution(t, 2));
      lifted.components += static_cast<int>(h.components.size());
      for (const auto& c : h.components) lifted.embedded += c.embedded;
      for (const auto& s : surface_analysis(t, h)) lifted.total_euler_characteristic += s.euler_characteristic;
    }
  }
  if (have_surface) r.quad_surface = lifted;
  return r;
}

}  // namespace eventri
