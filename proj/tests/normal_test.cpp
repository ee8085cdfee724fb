#include <gtest/gtest.h>

#include "eventri/fixtures.hpp"
#include "eventri/normal.hpp"
#include "support.hpp"

using namespace eventri;
namespace ts = testing_support;

namespace {

/// Euler characteristic per component after cutting every quadrilateral along a diagonal.
/// Corners are identified through the piece pairing, matching corners by the tetrahedron edge
/// they lie on.
std::vector<int> chi_by_diagonal_split(const Triangulation& tri, const Hypersurface& h) {
  const int cells = static_cast<int>(h.cells.size());
  UnionFind corners(cells * 16);
  auto id = [](int cell, unsigned edge) { return cell * 16 + static_cast<int>(edge); };
  for (int c = 0; c < cells; ++c)
    for (int i = 0; i < 4; ++i) {
      const auto link = h.pieces[c][i];
      if (link.cell < 0) continue;
      const auto& p = tri.vertex_map(h.cells[c].simplex, i);
      for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) {
          if (u == i || v == i) continue;
          const unsigned e = (1u << u) | (1u << v);
          const bool crosses = ((h.cells[c].side >> u) & 1) != ((h.cells[c].side >> v) & 1);
          if (crosses) corners.unite(id(c, e), id(link.cell, (1u << p(u)) | (1u << p(v))));
        }
    }
  std::vector<int> triangles(h.components.size(), 0), vertices(h.components.size(), 0);
  std::set<int> roots;
  for (int c = 0; c < cells; ++c) {
    const int corner_count = __builtin_popcount(h.cells[c].side) * (4 - __builtin_popcount(h.cells[c].side));
    triangles[h.component_of[c]] += corner_count - 2;
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v)
        if (((h.cells[c].side >> u) & 1) != ((h.cells[c].side >> v) & 1))
          if (roots.insert(corners.find(id(c, (1u << u) | (1u << v)))).second) ++vertices[h.component_of[c]];
  }
  std::vector<int> chi;
  for (std::size_t k = 0; k < h.components.size(); ++k) chi.push_back(vertices[k] - 3 * triangles[k] / 2 + triangles[k]);
  return chi;
}

}  // namespace

TEST(DiscTypes, Counts) {
  const auto n3 = enumerate_disc_types(3);
  ASSERT_EQ(n3.size(), 2u);
  EXPECT_EQ(n3[0].classes.size(), 4u);
  EXPECT_EQ(n3[1].classes.size(), 3u);
  EXPECT_EQ(disc_masks(3).size(), 7u);
  EXPECT_EQ(enumerate_disc_types(4)[1].classes.size(), 10u);
  const auto n5 = enumerate_disc_types(5);
  EXPECT_EQ(n5[2].classes.size(), 10u);
  for (int n = 3; n <= 8; ++n) {
    std::size_t total = 0;
    for (const auto& shape : enumerate_disc_types(n)) total += shape.classes.size();
    EXPECT_EQ(total, (1u << n) - 1);
  }
  EXPECT_THROW(enumerate_disc_types(2), Error);
}

TEST(MatchingSystem, EquationCounts) {
  const auto sys = build_matching_system(fixtures::lens_4_1());
  EXPECT_EQ(sys.equations.size(), 6u);
  EXPECT_EQ(sys.num_variables(), 7);
  const auto q = build_matching_system(fixtures::quaternionic_space());
  EXPECT_EQ(q.equations.size(), 4u * 3u);
}

TEST(MatchingSystem, KnownSolutions) {
  const auto d = fixtures::double_simplex(3);
  auto ones = NormalCoordinate::zero(3, 2);
  std::fill(ones.weights.begin(), ones.weights.end(), 1);
  EXPECT_TRUE(verify_solution(build_matching_system(d), ones).ok);
  const auto q = fixtures::quaternionic_space();
  const auto sys = build_matching_system(q);
  EXPECT_TRUE(verify_solution(sys, canonical_solution(q, 2)).ok);
  EXPECT_TRUE(verify_solution(sys, NormalCoordinate::zero(3, 2)).ok);
  auto unit = NormalCoordinate::zero(3, 2);
  unit.at(0, 0b0011) = 1;
  const auto check = verify_solution(sys, unit);
  EXPECT_FALSE(check.ok);
  ASSERT_TRUE(check.violated.has_value());
  EXPECT_NE(check.residual, 0);
}

TEST(CanonicalSolution, Weights) {
  const auto q = fixtures::quaternionic_space();
  EXPECT_EQ(canonical_solution(q, 2).total(), 6);
  EXPECT_EQ(canonical_solution(q, 1).total(), 8);
  const auto d5 = fixtures::double_simplex(5);
  const auto x = canonical_solution(d5, 3);
  EXPECT_EQ(x.total(), 20);
  EXPECT_TRUE(verify_solution(build_matching_system(d5), x).ok);
  EXPECT_THROW(canonical_solution(q, 3), Error);
  EXPECT_THROW(canonical_solution(q, 0), Error);
}

TEST(Assembly, FixtureComponentCounts) {
  const auto count = [](const Triangulation& t) { return assemble_hypersurface(t, canonical_solution(t, 2)).components.size(); };
  EXPECT_EQ(count(fixtures::quaternionic_space()), 3u);
  EXPECT_EQ(count(fixtures::lens_4_1()), 2u);
  EXPECT_EQ(count(fixtures::figure_eight()), 1u);
  EXPECT_EQ(count(fixtures::binary_tetrahedral()), 1u);
}

TEST(Assembly, RejectsBadCoordinates) {
  const auto q = fixtures::quaternionic_space();
  auto heavy = canonical_solution(q, 2);
  heavy.weights[4] = 2;
  try {
    assemble_hypersurface(q, heavy);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WeightsNotZeroOne);
  }
  auto unit = NormalCoordinate::zero(3, 2);
  unit.at(0, 0b0011) = 1;
  try {
    assemble_hypersurface(q, unit);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InadmissibleSolution);
  }
}

TEST(Assembly, PiecesArePairedSymmetrically) {
  for (const auto& t : {fixtures::quaternionic_space(), fixtures::lens_4_1(), fixtures::figure_eight(), fixtures::double_simplex(4)}) {
    for (int k = 1; 2 * k <= t.dim() + 1; ++k) {
      const auto h = assemble_hypersurface(t, canonical_solution(t, k));
      for (int c = 0; c < static_cast<int>(h.cells.size()); ++c) {
        EXPECT_EQ(h.num_pieces(c), k == 1 ? t.dim() : t.dim() + 1);
        for (int i = 0; i <= t.dim(); ++i) {
          const auto link = h.pieces[c][i];
          if (link.cell < 0) continue;
          EXPECT_EQ(h.pieces[link.cell][link.facet].cell, c);
          EXPECT_EQ(h.pieces[link.cell][link.facet].facet, i);
        }
      }
    }
  }
}

TEST(BranchLocus, EmptyOnEvenNonEmptyOnOdd) {
  for (const auto& t : {fixtures::quaternionic_space(), fixtures::lens_4_1(), fixtures::figure_eight(), fixtures::lens_3_1(),
                        fixtures::binary_tetrahedral(), fixtures::double_simplex(4)})
    EXPECT_TRUE(branch_locus(t, assemble_hypersurface(t, canonical_solution(t, 2))).empty());
  const auto odd = fixtures::odd_one_tetrahedron();
  const auto branched = branch_locus(odd, assemble_hypersurface(odd, canonical_solution(odd, 2)));
  ASSERT_FALSE(branched.empty());
  const auto degrees = face_orbits(odd, 1).degrees();
  for (const auto& b : branched) EXPECT_EQ(degrees[b.orbit] % 2, 1);
  EXPECT_EQ(static_cast<int>(branched.front().orbit), *is_even(odd).odd_orbit);
  EXPECT_TRUE(branch_locus(odd, assemble_hypersurface(odd, canonical_solution(odd, 1))).empty());
}

TEST(Embedding, Compatibility) {
  const auto q = fixtures::quaternionic_space();
  EXPECT_TRUE(embedding_check(canonical_solution(q, 1)));
  EXPECT_FALSE(embedding_check(canonical_solution(q, 2)));
  const auto h = assemble_hypersurface(q, canonical_solution(q, 2));
  auto one = NormalCoordinate::zero(3, 2);
  for (int c : h.components.front().cells) one.at(h.cells[c].simplex, h.cells[c].side) = 1;
  EXPECT_TRUE(verify_solution(build_matching_system(q), one).ok);
  EXPECT_TRUE(embedding_check(one));
  const auto pair = find_incompatible_pair(canonical_solution(q, 2));
  ASSERT_TRUE(pair.has_value());
  EXPECT_EQ(pair->simplex, 0);
}

TEST(ComponentCorrespondence, Fixtures) {
  const auto q = fixtures::quaternionic_space();
  const auto rq = component_rep_correspondence(q, canonical_representation(q), 2);
  EXPECT_EQ(rq.components, 3);
  EXPECT_EQ(rq.embedded_components, 3);
  EXPECT_EQ(rq.induced_image.order, 1);
  const auto l = fixtures::lens_4_1();
  const auto rl = component_rep_correspondence(l, canonical_representation(l), 2);
  EXPECT_EQ(rl.components, 2);
  EXPECT_EQ(rl.embedded_components, 1);
  EXPECT_EQ(rl.fixed_classes, 1);
  EXPECT_EQ(rl.induced_image.label, "C2");
  const auto f = fixtures::figure_eight();
  const auto rf = component_rep_correspondence(f, canonical_representation(f), 2);
  EXPECT_EQ(rf.components, 1);
  EXPECT_EQ(rf.embedded_components, 0);
  EXPECT_EQ(rf.induced_image.label, "C3");
  for (const auto& r : {rq, rl, rf}) {
    EXPECT_TRUE(r.components_match_orbits);
    EXPECT_TRUE(r.embedded_match_fixed);
  }
}

TEST(SurfaceAnalysis, Fixtures) {
  const auto analyse = [](const Triangulation& t) { return surface_analysis(t, assemble_hypersurface(t, canonical_solution(t, 2))); };
  const auto f = analyse(fixtures::figure_eight());
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].euler_characteristic, -2);
  for (const auto& s : analyse(fixtures::quaternionic_space())) {
    EXPECT_EQ(s.euler_characteristic, 0);
    EXPECT_FALSE(s.orientable);
    EXPECT_EQ(s.label, "Klein bottle");
  }
  const auto d = analyse(fixtures::double_simplex(3));
  ASSERT_EQ(d.size(), 3u);
  for (const auto& s : d) {
    EXPECT_EQ(s.euler_characteristic, 2);
    EXPECT_EQ(s.cells, 2);
    EXPECT_EQ(s.edges, 4);
    EXPECT_EQ(s.vertices, 4);
    EXPECT_EQ(s.label, "sphere");
  }
  const auto l = analyse(fixtures::lens_4_1());
  int projective = 0, klein = 0;
  for (const auto& s : l) {
    projective += s.label == "projective plane";
    klein += s.label == "Klein bottle";
  }
  EXPECT_EQ(projective, 1);
  EXPECT_EQ(klein, 1);
  int chi = 0;
  for (const auto& s : analyse(fixtures::binary_tetrahedral())) chi += s.euler_characteristic;
  EXPECT_EQ(chi, -4);
  for (const auto& s : surface_analysis(fixtures::quaternionic_space(),
                                        assemble_hypersurface(fixtures::quaternionic_space(), canonical_solution(fixtures::quaternionic_space(), 1)))) {
    EXPECT_EQ(s.euler_characteristic, 2);  // vertex link
    EXPECT_TRUE(s.two_sided);
  }
  const auto d4 = fixtures::double_simplex(4);
  EXPECT_THROW(surface_analysis(d4, assemble_hypersurface(d4, canonical_solution(d4, 2))), Error);
}

TEST(SurfaceAnalysis, EulerCharacteristicMatchesDiagonalSplit) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 120; ++trial) {
    const auto t = ts::random_triangulation(rng, 3, 4, trial % 2 == 0);
    for (int k = 1; k <= 2; ++k) {
      const auto h = assemble_hypersurface(t, canonical_solution(t, k));
      const auto surfaces = surface_analysis(t, h);
      const auto oracle = chi_by_diagonal_split(t, h);
      for (std::size_t c = 0; c < surfaces.size(); ++c) EXPECT_EQ(surfaces[c].euler_characteristic, oracle[c]);
    }
  }
}

TEST(RankBound, Fixtures) {
  const auto q = fixtures::quaternionic_space();
  EXPECT_EQ(z2_rank_bound(q, canonical_representation(q)), 2);
  const auto f = fixtures::figure_eight();
  EXPECT_EQ(z2_rank_bound(f, canonical_representation(f)), 0);
  const auto d = fixtures::double_simplex(3);
  EXPECT_EQ(z2_rank_bound(d, canonical_representation(d)), 0);
}
