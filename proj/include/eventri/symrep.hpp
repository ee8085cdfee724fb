#pragma once

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eventri/group.hpp"
#include "eventri/skeleton.hpp"

namespace eventri {

/// Reflection of corner labels across facet `facet` of `simplex` into the adjacent simplex.
/// Corners of the facet follow the face pairing; the opposite corner goes to the opposite corner
/// of the target facet.
inline Permutation perspectivity(const Triangulation& tri, int simplex, int facet) {
  if (simplex < 0 || simplex >= tri.num_simplices() || facet < 0 || facet > tri.dim())
    throw Error(ErrorKind::IndexOutOfRange, "no facet " + std::to_string(facet) + " on simplex " + std::to_string(simplex));
  return tri.vertex_map(simplex, facet);
}

struct FacetRef {
  int simplex;
  int facet;
  friend bool operator==(const FacetRef&, const FacetRef&) = default;
};

/// Alternating sequence (tau_0, tau'_1, tau_1, ..., tau'_{k+1}): tau_j is the facet crossed out
/// of the j-th simplex, tau'_j the facet through which it was entered. An empty path sits at
/// `start`.
struct FacetPath {
  int start = 0;
  std::vector<FacetRef> facets;

  /// Path leaving `start` through the given facets in turn.
  static FacetPath from_exits(const Triangulation& tri, int start, const std::vector<int>& exits) {
    FacetPath path{start, {}};
    int cur = start;
    for (int f : exits) {
      path.facets.push_back({cur, f});
      const int t = tri.target_simplex(cur, f);
      path.facets.push_back({t, tri.target_facet(cur, f)});
      cur = t;
    }
    return path;
  }

  int end_simplex() const { return facets.empty() ? start : facets.back().simplex; }
};

/// Composition p_{tau_k} o ... o p_{tau_0} of the perspectivities along the path.
inline Permutation projectivity(const Triangulation& tri, const FacetPath& path) {
  Permutation result = Permutation::identity(tri.num_corners());
  if (path.facets.empty()) return result;
  if (path.facets.size() % 2 != 0) throw Error(ErrorKind::MalformedPath, "a facet path has an even number of entries");
  if (path.facets.front().simplex != path.start)
    throw Error(ErrorKind::MalformedPath, "path does not leave its start simplex");
  for (std::size_t j = 0; j < path.facets.size(); j += 2) {
    const FacetRef out = path.facets[j];
    const FacetRef in = path.facets[j + 1];
    if (out.facet < 0 || out.facet > tri.dim() || out.simplex < 0 || out.simplex >= tri.num_simplices())
      throw Error(ErrorKind::MalformedPath, "facet out of range at position " + std::to_string(j));
    if (tri.target_simplex(out.simplex, out.facet) != in.simplex || tri.target_facet(out.simplex, out.facet) != in.facet)
      throw Error(ErrorKind::MalformedPath, "entry facet at position " + std::to_string(j + 1) + " is not the paired facet");
    if (j + 2 < path.facets.size()) {
      const FacetRef next = path.facets[j + 2];
      if (next.simplex != in.simplex || next.facet == in.facet)
        throw Error(ErrorKind::MalformedPath, "consecutive facets at position " + std::to_string(j + 2) +
                                                  " must be distinct facets of one simplex");
    }
    result = perspectivity(tri, out.simplex, out.facet) * result;
  }
  return result;
}

/// Maps base corners to corners of each simplex along the spanning tree.
inline std::vector<Permutation> tree_transports(const Triangulation& tri, const DualGraph& graph) {
  std::vector<Permutation> transport(tri.num_simplices());
  transport[graph.base] = Permutation::identity(tri.num_corners());
  for (int s : graph.bfs_order) {
    if (s == graph.base) continue;
    const int parent = graph.parent_simplex[s];
    transport[s] = tri.vertex_map(parent, graph.parent_facet[s]) * transport[parent];
  }
  return transport;
}

/// Projectivity of one full circuit around an (n-2)-face, starting at `incidence` and leaving
/// through the facet opposite its lower missing corner. Acts on the corners of that simplex.
inline Permutation local_walk_around(const Triangulation& tri, FaceIncidence incidence, int* steps = nullptr) {
  const std::uint32_t missing = tri.full_mask() & ~incidence.vertices;
  const int first_exit = std::countr_zero(missing);
  int cur = incidence.simplex;
  std::uint32_t face = incidence.vertices;
  int exit = first_exit;
  Permutation acc = Permutation::identity(tri.num_corners());
  int count = 0;
  do {
    const Permutation& pi = tri.vertex_map(cur, exit);
    const int entry = pi(exit);
    acc = pi * acc;
    cur = tri.target_simplex(cur, exit);
    face = pi.apply_mask(face);
    const std::uint32_t gap = tri.full_mask() & ~face & ~(1u << entry);
    exit = std::countr_zero(gap);
    ++count;
  } while (!(cur == incidence.simplex && face == incidence.vertices && exit == first_exit));
  if (steps) *steps = count;
  return acc;
}

struct Generator {
  DualEdge edge;
  Permutation perm;
};

struct RelatorCheck {
  int orbit;  // index in the (n-2)-face table
  Permutation perm;
};

/// Canonical symmetric representation, or a representation induced from it.
struct RepReport {
  int base = 0;
  bool even = true;
  int degree = 0;  // number of letters acted on
  int partition_size = 1;              // k for induced representations, 1 for the canonical one
  std::vector<std::uint32_t> classes;  // partition classes (small side masks) when induced
  std::vector<Generator> generators;
  std::vector<RelatorCheck> relator_checks;
  GroupInfo image;
};

/// Walk-around projectivity of every (n-2)-face orbit, conjugated back to the base simplex.
/// Does not require evenness.
inline std::vector<RelatorCheck> relator_projectivities(const Triangulation& tri, int base = 0) {
  const auto graph = dual_graph(tri, base);
  const auto transport = tree_transports(tri, graph);
  const auto faces = face_orbits(tri, tri.dim() - 2);
  std::vector<RelatorCheck> out;
  for (int o = 0; o < faces.size(); ++o) {
    const FaceIncidence inc = faces.orbits()[o].incidences.front();
    const Permutation& t = transport[inc.simplex];
    out.push_back({o, t.inverse() * local_walk_around(tri, inc) * t});
  }
  return out;
}

/// Generator images of the canonical representation: one per non-tree dual edge, computed as
/// (transport to far end)^-1 o perspectivity o (transport to near end).
inline RepReport canonical_representation(const Triangulation& tri, int base = 0) {
  if (tri.dim() < 3) throw Error(ErrorKind::UnsupportedDimension, "representations need dim >= 3");
  const auto graph = dual_graph(tri, base);
  const auto parity = is_even(tri);
  if (!parity.even) {
    const auto& w = *parity.witness;
    throw Error(ErrorKind::NotEven, "(n-2)-face orbit " + std::to_string(*parity.odd_orbit) + " (simplex " +
                                        std::to_string(w.simplex) + ", vertex mask " + std::to_string(w.vertices) +
                                        ") has odd degree " + std::to_string(parity.witness_degree));
  }
  const auto transport = tree_transports(tri, graph);
  RepReport rep;
  rep.base = base;
  rep.degree = tri.num_corners();
  for (int e : graph.non_tree_edges()) {
    const DualEdge& edge = graph.edges[e];
    Permutation g = transport[edge.t].inverse() * tri.vertex_map(edge.s, edge.i) * transport[edge.s];
    rep.generators.push_back({edge, std::move(g)});
  }
  rep.relator_checks = relator_projectivities(tri, base);
  std::vector<Permutation> gens;
  for (const auto& g : rep.generators) gens.push_back(g.perm);
  rep.image = describe_group(gens, rep.degree);
  return rep;
}

/// Normalised two-set partitions of {0..n} whose smaller side has k elements. When both sides
/// have the same size the side containing 0 is kept.
inline std::vector<std::uint32_t> partition_classes(int n, int k) {
  std::vector<std::uint32_t> out;
  for (auto mask : subsets_of_size(n + 1, k)) {
    if (2 * k == n + 1 && !(mask & 1u)) continue;
    out.push_back(mask);
  }
  return out;
}

inline std::uint32_t normalise_partition(std::uint32_t side, int n) {
  const std::uint32_t full = (1u << (n + 1)) - 1;
  const int a = std::popcount(side);
  const int b = n + 1 - a;
  if (a < b) return side;
  if (a > b) return full & ~side;
  return (side & 1u) ? side : (full & ~side);
}

/// Action of a permutation of {0..n} on the partition classes.
inline Permutation induced_permutation(const Permutation& g, const std::vector<std::uint32_t>& classes, int n) {
  std::map<std::uint32_t, int> index;
  for (std::size_t c = 0; c < classes.size(); ++c) index[classes[c]] = static_cast<int>(c);
  std::vector<int> images(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) images[c] = index.at(normalise_partition(g.apply_mask(classes[c]), n));
  return Permutation(std::move(images));
}

/// The representation on (k, n-k+1) partitions induced by a canonical representation.
inline RepReport induced_representation(const RepReport& rep, int k) {
  const int n = rep.degree - 1;
  if (rep.partition_size != 1) throw Error(ErrorKind::PreconditionViolation, "induce from the canonical representation");
  if (k < 2 || 2 * k > n + 1)
    throw Error(ErrorKind::IndexOutOfRange, "k must satisfy 2 <= k <= (n+1)/2, got " + std::to_string(k));
  RepReport out;
  out.base = rep.base;
  out.even = rep.even;
  out.partition_size = k;
  out.classes = partition_classes(n, k);
  out.degree = static_cast<int>(out.classes.size());
  std::vector<Permutation> gens;
  for (const auto& g : rep.generators) {
    out.generators.push_back({g.edge, induced_permutation(g.perm, out.classes, n)});
    gens.push_back(out.generators.back().perm);
  }
  for (const auto& r : rep.relator_checks) out.relator_checks.push_back({r.orbit, induced_permutation(r.perm, out.classes, n)});
  out.image = describe_group(gens, out.degree);
  return out;
}

/// Conjugation action of a permutation of {0,1,2,3} on the double transpositions
/// (01)(23), (02)(13), (03)(12).
inline Permutation klein_quotient(const Permutation& g) {
  static const std::vector<Permutation> doubles = {
      Permutation::from_cycles(4, "(01)(23)"), Permutation::from_cycles(4, "(02)(13)"), Permutation::from_cycles(4, "(03)(12)")};
  std::vector<int> images(3);
  for (int i = 0; i < 3; ++i) {
    const Permutation c = g * doubles[i] * g.inverse();
    images[i] = static_cast<int>(std::find(doubles.begin(), doubles.end(), c) - doubles.begin());
  }
  return Permutation(std::move(images));
}

/// Checks that the (2,2)-induced representation equals the canonical one followed by the
/// quotient of Sym(4) by its normal Klein subgroup, generator by generator.
inline bool klein_factor_check(const RepReport& rep) {
  if (rep.degree != 4 || rep.partition_size != 1)
    throw Error(ErrorKind::UnsupportedDimension, "the Klein factorisation applies to dim 3 canonical representations");
  const auto induced = induced_representation(rep, 2);
  for (std::size_t g = 0; g < rep.generators.size(); ++g)
    if (klein_quotient(rep.generators[g].perm) != induced.generators[g].perm) return false;
  return true;
}

struct WordLetter {
  int generator;
  bool inverse;
  friend bool operator==(const WordLetter&, const WordLetter&) = default;
};

/// Image of a word; the first letter acts first.
inline Permutation evaluate_word(const RepReport& rep, const std::vector<WordLetter>& word) {
  Permutation acc = Permutation::identity(rep.degree);
  for (const auto& l : word) {
    const Permutation& g = rep.generators.at(l.generator).perm;
    acc = (l.inverse ? g.inverse() : g) * acc;
  }
  return acc;
}

struct VertexWitness {
  int from;
  int to;
  std::vector<WordLetter> word;
};

struct VertexWitnessReport {
  std::vector<VertexWitness> witnesses;
  int vertex_count = 0;
  bool image_nontrivial = false;
  bool consequence_holds = true;  // fewer than n+1 vertices forces a non-trivial image
};

/// For each pair of base corners that are the same vertex of the quotient, a generator word
/// whose projectivity maps one to the other.
inline VertexWitnessReport vertex_orbit_witness(const Triangulation& tri, const RepReport& rep) {
  const auto vertices = face_orbits(tri, 0);
  const int letters = tri.num_corners();
  VertexWitnessReport out;
  out.vertex_count = vertices.size();
  out.image_nontrivial = rep.image.order > 1;
  out.consequence_holds = !(out.vertex_count < letters) || out.image_nontrivial;
  for (int v = 0; v < letters; ++v) {
    // breadth-first search over corners reachable from v
    std::vector<std::optional<std::vector<WordLetter>>> word(letters);
    word[v] = std::vector<WordLetter>{};
    std::deque<int> queue{v};
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      for (int g = 0; g < static_cast<int>(rep.generators.size()); ++g) {
        for (bool inv : {false, true}) {
          const Permutation& p = rep.generators[g].perm;
          const int d = inv ? p.inverse()(c) : p(c);
          if (word[d]) continue;
          word[d] = *word[c];
          word[d]->push_back({g, inv});
          queue.push_back(d);
        }
      }
    }
    for (int w = v + 1; w < letters; ++w) {
      if (vertices.orbit_of(rep.base, 1u << v) != vertices.orbit_of(rep.base, 1u << w)) continue;
      if (!word[w])
        throw Error(ErrorKind::PreconditionViolation, "corners " + std::to_string(v) + " and " + std::to_string(w) +
                                                          " are identified but no projectivity relates them");
      out.witnesses.push_back({v, w, *word[w]});
    }
  }
  return out;
}

struct VertexLabelling {
  std::vector<int> labels;  // per vertex orbit, in {0..n}
  bool proper = true;       // endpoints of every edge receive distinct labels
};

/// Labels each vertex by transporting the base corner labels along the spanning tree. Only
/// possible when the canonical representation has trivial image.
inline VertexLabelling vertex_labelling(const Triangulation& tri, int base = 0) {
  const auto rep = canonical_representation(tri, base);
  if (rep.image.order != 1)
    throw Error(ErrorKind::NonTrivialImage, "canonical image is " + rep.image.label + " of order " + std::to_string(rep.image.order));
  const auto graph = dual_graph(tri, base);
  const auto transport = tree_transports(tri, graph);
  const auto vertices = face_orbits(tri, 0);
  VertexLabelling out;
  out.labels.assign(vertices.size(), -1);
  for (int s = 0; s < tri.num_simplices(); ++s) {
    const Permutation back = transport[s].inverse();
    for (int c = 0; c < tri.num_corners(); ++c) {
      int& slot = out.labels[vertices.orbit_of(s, 1u << c)];
      if (slot < 0) slot = back(c);
      if (slot != back(c)) throw Error(ErrorKind::PreconditionViolation, "inconsistent vertex labels");
    }
  }
  const auto edges = face_orbits(tri, 1);
  for (const auto& e : edges.orbits()) {
    const auto inc = e.incidences.front();
    const int a = std::countr_zero(inc.vertices);
    const int b = 31 - std::countl_zero(inc.vertices);
    if (out.labels[vertices.orbit_of(inc.simplex, 1u << a)] == out.labels[vertices.orbit_of(inc.simplex, 1u << b)])
      out.proper = false;
  }
  return out;
}

struct HakenViolation {
  std::string kind;  // "loop-edge", "shared-vertices", "missing-triangle"
  int face_dim = 0;
  std::vector<int> vertices;
};

struct HakenReport {
  bool ok = true;
  std::vector<HakenViolation> violations;
};

/// Combinatorial conditions on an even triangulation of a sphere whose dual cell can serve as a
/// Haken cell: no loop edges, no two faces spanning the same vertex set, and every three
/// pairwise-adjacent vertices span a triangle.
inline HakenReport haken_cell_check(const Triangulation& tri, int base = 0) {
  if (!is_even(tri).even) throw Error(ErrorKind::PreconditionViolation, "triangulation is not even");
  if (tri.dim() < 3) throw Error(ErrorKind::UnsupportedDimension, "representations need dim >= 3");
  try {
    (void)vertex_labelling(tri, base);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonTrivialImage) throw Error(ErrorKind::PreconditionViolation, e.what());
    throw;
  }
  const auto vertices = face_orbits(tri, 0);
  auto vertex_set = [&](const FaceIncidence& inc) {
    std::set<int> vs;
    for (int c = 0; c < tri.num_corners(); ++c)
      if (inc.vertices & (1u << c)) vs.insert(vertices.orbit_of(inc.simplex, 1u << c));
    return vs;
  };
  HakenReport report;
  std::set<std::set<int>> edge_sets;
  std::set<std::set<int>> triangle_sets;
  for (int k = 1; k <= tri.dim(); ++k) {
    // top-dimensional faces are the simplices themselves
    std::vector<FaceIncidence> representatives;
    if (k < tri.dim()) {
      const auto table = face_orbits(tri, k);
      for (const auto& orbit : table.orbits()) representatives.push_back(orbit.incidences.front());
    } else {
      for (int s = 0; s < tri.num_simplices(); ++s) representatives.push_back({s, tri.full_mask()});
    }
    std::map<std::set<int>, int> seen;
    for (const auto& rep_face : representatives) {
      const auto vs = vertex_set(rep_face);
      if (static_cast<int>(vs.size()) != k + 1) {
        report.violations.push_back({k == 1 ? "loop-edge" : "degenerate-face", k, {vs.begin(), vs.end()}});
        continue;
      }
      if (++seen[vs] == 2) report.violations.push_back({"shared-vertices", k, {vs.begin(), vs.end()}});
      if (k == 1) edge_sets.insert(vs);
      if (k == 2) triangle_sets.insert(vs);
    }
  }
  const int nv = vertices.size();
  auto adjacent = [&](int a, int b) { return edge_sets.count({a, b}) > 0; };
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b)
      for (int c = b + 1; c < nv; ++c)
        if (adjacent(a, b) && adjacent(b, c) && adjacent(a, c) && !triangle_sets.count({a, b, c}))
          report.violations.push_back({"missing-triangle", 2, {a, b, c}});
  report.ok = report.violations.empty();
  return report;
}

}  // namespace eventri
