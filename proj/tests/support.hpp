#pragma once

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eventri/fixtures.hpp"
#include "eventri/skeleton.hpp"

namespace testing_support {

using eventri::Permutation;
using eventri::Triangulation;

#ifndef EVENTRI_FIXTURE_DIR
#define EVENTRI_FIXTURE_DIR "fixtures"
#endif

inline std::string fixture_path(const std::string& name) { return std::string(EVENTRI_FIXTURE_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::vector<std::vector<int>> all_permutations(int m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Random connected gluing table of dimension n with at most max_simplices simplices. With
/// `orientable_odd`, every vertex map is an odd permutation, so giving all simplices the same
/// sign orients every gluing.
inline Triangulation random_triangulation(std::mt19937& rng, int n, int max_simplices, bool orientable_odd) {
  const auto perms = all_permutations(n + 1);
  while (true) {
    const int count = std::uniform_int_distribution<int>(1, max_simplices)(rng);
    std::vector<int> facets(count * (n + 1));
    std::iota(facets.begin(), facets.end(), 0);
    if (facets.size() % 2 != 0) continue;
    std::shuffle(facets.begin(), facets.end(), rng);
    std::vector<std::vector<Triangulation::Entry>> table(count, std::vector<Triangulation::Entry>(n + 1));
    for (std::size_t k = 0; k < facets.size(); k += 2) {
      const int s = facets[k] / (n + 1), i = facets[k] % (n + 1);
      const int t = facets[k + 1] / (n + 1), j = facets[k + 1] % (n + 1);
      std::vector<std::vector<int>> choices;
      for (const auto& p : perms) {
        if (p[i] != j) continue;
        if (orientable_odd && Permutation(p).sign() != -1) continue;
        choices.push_back(p);
      }
      const auto& p = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
      table[s][i] = {t, p};
      table[t][j] = {s, Permutation(p).inverse().images()};
    }
    try {
      return Triangulation(n, std::move(table));
    } catch (const eventri::Error&) {
      // disconnected, retry
    }
  }
}

/// The fixed property-test corpus: orientable 3-dimensional tables with at most 4 simplices,
/// topped up with even members until at least `min_even` are present.
inline std::vector<Triangulation> corpus(int size = 240, int min_even = 60, unsigned seed = 20240611) {
  std::mt19937 rng(seed);
  std::vector<Triangulation> out;
  int even = 0;
  while (static_cast<int>(out.size()) < size || even < min_even) {
    auto t = random_triangulation(rng, 3, 4, true);
    const bool is_even = eventri::is_even(t).even;
    if (static_cast<int>(out.size()) >= size && !is_even) continue;
    even += is_even;
    out.push_back(std::move(t));
  }
  return out;
}

/// Edge degrees by walking: every edge incidence (simplex, edge mask) is visited by a
/// breadth-first search across facets that contain the edge. Orbits sorted by first incidence.
inline std::vector<int> edge_degrees_by_walk(const Triangulation& tri) {
  const int n = tri.dim();
  std::set<std::pair<int, unsigned>> seen;
  std::vector<int> degrees;
  for (int s = 0; s < tri.num_simplices(); ++s)
    for (unsigned m = 0; m < (1u << (n + 1)); ++m) {
      if (__builtin_popcount(m) != n - 1 || seen.count({s, m})) continue;
      std::vector<std::pair<int, unsigned>> stack{{s, m}};
      seen.insert({s, m});
      int degree = 0;
      while (!stack.empty()) {
        auto [cs, cm] = stack.back();
        stack.pop_back();
        ++degree;
        for (int i = 0; i <= n; ++i) {
          if (cm & (1u << i)) continue;
          const auto& p = tri.vertex_map(cs, i);
          unsigned image = 0;
          for (int v = 0; v <= n; ++v)
            if (cm & (1u << v)) image |= 1u << p(v);
          std::pair<int, unsigned> next{tri.target_simplex(cs, i), image};
          if (seen.insert(next).second) stack.push_back(next);
        }
      }
      degrees.push_back(degree);
    }
  return degrees;
}

/// Orientability by trying every sign assignment.
inline bool orientable_by_brute_force(const Triangulation& tri) {
  const int count = tri.num_simplices();
  for (long mask = 0; mask < (1L << count); ++mask) {
    bool ok = true;
    for (int s = 0; s < count && ok; ++s)
      for (int i = 0; i <= tri.dim() && ok; ++i) {
        const int t = tri.target_simplex(s, i);
        const int os = (mask >> s) & 1 ? -1 : 1;
        const int ot = (mask >> t) & 1 ? -1 : 1;
        ok = ot == -tri.vertex_map(s, i).sign() * os;
      }
    if (ok) return true;
  }
  return false;
}

}  // namespace testing_support
