#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "eventri/permutation.hpp"

namespace eventri {

/// A finite permutation group given by its full element list.
struct GroupInfo {
  int degree = 0;
  int order = 1;
  std::vector<Permutation> elements;  // sorted, identity first
  std::string label;
  int orbit_count = 0;  // orbits on the degree letters
  bool transitive = false;
  bool abelian = true;
  std::vector<int> abelian_invariants;  // invariant factors of G/[G,G], each dividing the next
};

inline long long factorial(int m) {
  long long f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

/// Closure of the generators under composition. Stops once `cap` elements are reached.
inline std::vector<Permutation> generate_group(const std::vector<Permutation>& generators, int degree,
                                               long long cap) {
  std::set<Permutation> seen{Permutation::identity(degree)};
  std::deque<Permutation> frontier{Permutation::identity(degree)};
  while (!frontier.empty() && static_cast<long long>(seen.size()) < cap) {
    Permutation g = frontier.front();
    frontier.pop_front();
    for (const auto& h : generators) {
      Permutation p = h * g;
      if (seen.insert(p).second) frontier.push_back(std::move(p));
    }
  }
  return {seen.begin(), seen.end()};
}

namespace detail {

inline bool contains(const std::vector<Permutation>& sorted, const Permutation& p) {
  return std::binary_search(sorted.begin(), sorted.end(), p);
}

inline int letter_orbits(const std::vector<Permutation>& elements, int degree) {
  std::vector<int> parent(degree);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : elements)
    for (int x = 0; x < degree; ++x) parent[find(x)] = find(g(x));
  int count = 0;
  for (int x = 0; x < degree; ++x) count += find(x) == x;
  return count;
}

inline std::vector<int> prime_factors(int m) {
  std::vector<int> out;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    out.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) out.push_back(m);
  return out;
}

/// Invariant factors of a finite abelian group, given the order of each element.
inline std::vector<int> abelian_invariants_from_orders(const std::vector<int>& element_orders) {
  const int order = static_cast<int>(element_orders.size());
  if (order <= 1) return {};
  // exponents[p] lists the exponents of the p-primary cyclic factors, largest first
  std::vector<std::vector<int>> primary;
  for (int p : prime_factors(order)) {
    std::vector<int> log_counts{0};
    int pk = 1;
    while (true) {
      pk *= p;
      int c = 0;
      for (int o : element_orders)
        if (pk % o == 0 || o == 1) ++c;
      int lg = 0;
      for (int v = c; v > 1; v /= p) ++lg;
      log_counts.push_back(lg);
      if (log_counts.back() == log_counts[log_counts.size() - 2]) break;
    }
    // number of cyclic factors with exponent >= i is log_counts[i] - log_counts[i-1]
    std::vector<int> exps;
    const int max_i = static_cast<int>(log_counts.size()) - 1;
    std::vector<int> at_least(max_i + 2, 0);
    for (int i = 1; i <= max_i; ++i) at_least[i] = log_counts[i] - log_counts[i - 1];
    for (int i = 1; i <= max_i; ++i) {
      const int exactly = at_least[i] - at_least[i + 1];
      for (int r = 0; r < exactly; ++r) exps.push_back(i);
    }
    std::sort(exps.rbegin(), exps.rend());
    std::vector<int> powers;
    for (int e : exps) {
      int v = 1;
      for (int r = 0; r < e; ++r) v *= p;
      powers.push_back(v);
    }
    primary.push_back(std::move(powers));
  }
  std::size_t width = 0;
  for (const auto& v : primary) width = std::max(width, v.size());
  std::vector<int> factors(width, 1);
  for (const auto& v : primary)
    for (std::size_t r = 0; r < v.size(); ++r) factors[r] *= v[r];
  std::reverse(factors.begin(), factors.end());
  return factors;
}

/// Invariant factors of the abelianisation. Returns an empty list for perfect groups.
inline std::vector<int> abelianisation(const std::vector<Permutation>& elements,
                                       const std::vector<Permutation>& generators, int degree) {
  std::vector<Permutation> commutators;
  for (const auto& a : generators)
    for (const auto& b : generators) {
      Permutation c = a * b * a.inverse() * b.inverse();
      if (!c.is_identity()) commutators.push_back(c);
    }
  std::vector<Permutation> conj;
  {
    std::set<Permutation> uniq;
    for (const auto& c : commutators)
      for (const auto& x : elements) uniq.insert(x * c * x.inverse());
    conj.assign(uniq.begin(), uniq.end());
  }
  const auto derived = generate_group(conj, degree, static_cast<long long>(elements.size()));
  // coset of g is identified by its smallest element g*d
  std::map<Permutation, int> coset_index;
  std::vector<Permutation> reps;
  for (const auto& g : elements) {
    Permutation key = g;
    for (const auto& d : derived) key = std::min(key, g * d);
    if (coset_index.emplace(key, static_cast<int>(reps.size())).second) reps.push_back(g);
  }
  std::vector<int> orders;
  for (const auto& g : reps) {
    int m = 1;
    Permutation power = g;
    while (!contains(derived, power)) {
      power = power * g;
      ++m;
    }
    orders.push_back(m);
  }
  return abelian_invariants_from_orders(orders);
}

inline std::string label_for(const GroupInfo& info) {
  const int order = info.order;
  if (order == 1) return "trivial";
  auto has_cycle_type = [&](std::vector<int> type) {
    std::sort(type.begin(), type.end());
    for (const auto& g : info.elements)
      if (g.cycle_type() == type) return true;
    return false;
  };
  if (info.degree == 4) {
    switch (order) {
      case 2: return "C2";
      case 3: return "C3";
      case 4: {
        if (has_cycle_type({4})) return "C4";
        // the normal Klein group consists of the identity and the three double transpositions
        for (const auto& g : info.elements)
          if (!g.is_identity() && g.cycle_type() != std::vector<int>{2, 2}) return "K(non-normal)";
        return "K(normal)";
      }
      case 6: return "S3";
      case 8: return "D4";
      case 12: return "A4";
      case 24: return "S4";
      default: break;
    }
  }
  if (info.degree == 3) {
    switch (order) {
      case 2: return "C2";
      case 3: return "C3";
      case 6: return "S3";
      default: break;
    }
  }
  for (const auto& g : info.elements)
    if (g.order() == order) return "C" + std::to_string(order);
  std::string inv;
  for (int f : info.abelian_invariants) inv += (inv.empty() ? "" : ",") + std::to_string(f);
  return "unclassified(" + std::to_string(order) + ";" + inv + ")";
}

}  // namespace detail

/// Generates and classifies the group. Degree-3 and degree-4 groups get the fixed labels
/// trivial, C2, C3, C4, K(normal), K(non-normal), S3, D4, A4, S4.
inline GroupInfo describe_group(const std::vector<Permutation>& generators, int degree) {
  GroupInfo info;
  info.degree = degree;
  const long long cap = factorial(std::max(degree, 1));
  info.elements = generate_group(generators, degree, cap);
  info.order = static_cast<int>(info.elements.size());
  info.orbit_count = detail::letter_orbits(info.elements, degree);
  info.transitive = info.orbit_count == 1;
  info.abelian = true;
  for (const auto& a : generators)
    for (const auto& b : generators)
      if (a * b != b * a) info.abelian = false;
  info.abelian_invariants = detail::abelianisation(info.elements, generators, degree);
  info.label = detail::label_for(info);
  return info;
}

}  // namespace eventri
