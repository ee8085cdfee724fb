#pragma once

#include <algorithm>
#include <vector>

#include "eventri/triangulation.hpp"

namespace eventri::fixtures {

using Table = std::vector<std::vector<Triangulation::Entry>>;

/// Two n-simplices with facet i of one glued to facet i of the other by the identity.
/// An even triangulation of S^n with n+1 vertices.
inline Triangulation double_simplex(int n) {
  if (n < 2) throw Error(ErrorKind::DimensionTooSmall, "double simplex needs n >= 2");
  std::vector<int> id(n + 1);
  for (int i = 0; i <= n; ++i) id[i] = i;
  Table table(2);
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i <= n; ++i) table[s].push_back({1 - s, id});
  return Triangulation(n, std::move(table));
}

/// Boundary of the (n+1)-dimensional cross-polytope as a triangulation of S^n. Simplex number
/// b has corner c at +e_c when bit c of b is clear and at -e_c otherwise.
inline Triangulation cross_polytope_boundary(int n) {
  std::vector<int> id(n + 1);
  for (int i = 0; i <= n; ++i) id[i] = i;
  const int count = 1 << (n + 1);
  Table table(count);
  for (int b = 0; b < count; ++b)
    for (int c = 0; c <= n; ++c) table[b].push_back({b ^ (1 << c), id});
  return Triangulation(n, std::move(table));
}

/// Quaternionic space S^3/Q8: two tetrahedra, one vertex.
inline Triangulation quaternionic_space() {
  return Triangulation(3, Table{
                              {{1, {0, 3, 2, 1}}, {1, {2, 1, 0, 3}}, {1, {1, 2, 3, 0}}, {1, {3, 0, 1, 2}}},
                              {{0, {0, 3, 2, 1}}, {0, {2, 1, 0, 3}}, {0, {1, 2, 3, 0}}, {0, {3, 0, 1, 2}}},
                          });
}

/// One-tetrahedron lens space L(4,1): [0,1,2] -> [3,0,1] and [0,2,3] -> [3,1,2].
inline Triangulation lens_4_1() {
  return Triangulation(3, Table{
                              {{0, {1, 2, 3, 0}}, {0, {3, 0, 1, 2}}, {0, {1, 2, 3, 0}}, {0, {3, 0, 1, 2}}},
                          });
}

/// Ideal triangulation of the figure-eight knot complement: two tetrahedra, one ideal vertex.
inline Triangulation figure_eight() {
  return Triangulation(3, Table{
                              {{1, {1, 0, 2, 3}}, {1, {0, 2, 1, 3}}, {1, {0, 1, 3, 2}}, {1, {3, 1, 2, 0}}},
                              {{0, {3, 1, 2, 0}}, {0, {1, 0, 2, 3}}, {0, {0, 2, 1, 3}}, {0, {0, 1, 3, 2}}},
                          });
}

/// Two-vertex lens space L(3,1): a cone on the double of a triangle (corner 0 is the cone point)
/// whose top and bottom triangles are then identified by a rotation.
inline Triangulation lens_3_1() {
  return Triangulation(3, Table{
                              {{1, {0, 2, 3, 1}}, {1, {0, 1, 2, 3}}, {1, {0, 1, 2, 3}}, {1, {0, 1, 2, 3}}},
                              {{0, {0, 3, 1, 2}}, {0, {0, 1, 2, 3}}, {0, {0, 1, 2, 3}}, {0, {0, 1, 2, 3}}},
                          });
}

/// Octahedron coned to its centre (corner 0 of every tetrahedron); tetrahedron b carries the
/// octahedron face whose corner c+1 sits at -e_c when bit c of b is set, +e_c otherwise.
/// Opposite faces are identified by the antipodal map followed by a rotation of the face by a
/// third of a turn, with the screw sense fixed relative to the outward normal. The result is a
/// two-vertex even triangulation of S^3 modulo the binary tetrahedral group.
inline Triangulation binary_tetrahedral() {
  Table table(8);
  const int twist[4] = {1, 2, 2, 1};  // indexed by the smaller face of each opposite pair
  for (int b = 0; b < 8; ++b) {
    const int pair = std::min(b, b ^ 7);
    const int r = b == pair ? twist[pair] : (3 - twist[pair]) % 3;
    table[b].push_back({b ^ 7, {0, 1 + r % 3, 1 + (1 + r) % 3, 1 + (2 + r) % 3}});
    for (int c = 0; c < 3; ++c) table[b].push_back({b ^ (1 << c), {0, 1, 2, 3}});
  }
  return Triangulation(3, std::move(table));
}

/// One tetrahedron with facets 0,1 paired by (01) and facets 2,3 by (23). Orientable, with edge
/// degrees 1, 4, 1, so not even.
inline Triangulation odd_one_tetrahedron() {
  return Triangulation(3, Table{{{0, {1, 0, 2, 3}}, {0, {1, 0, 2, 3}}, {0, {0, 1, 3, 2}}, {0, {0, 1, 3, 2}}}});
}

}  // namespace eventri::fixtures
