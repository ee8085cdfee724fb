#pragma once

#include <numeric>
#include <vector>

namespace eventri {

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(int n = 0) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

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
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  int size() const { return static_cast<int>(parent_.size()); }

  /// Dense class ids 0..k-1 assigned in order of first appearance.
  std::vector<int> labels(int* count = nullptr) {
    std::vector<int> root_label(parent_.size(), -1);
    std::vector<int> out(parent_.size());
    int next = 0;
    for (int i = 0; i < size(); ++i) {
      int r = find(i);
      if (root_label[r] < 0) root_label[r] = next++;
      out[i] = root_label[r];
    }
    if (count) *count = next;
    return out;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

/// Union-find that tracks a Z/2 offset between each element and its root, used to propagate
/// orientations and sides. unite() returns false when a constraint contradicts earlier ones.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(int n = 0) : parent_(n), parity_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  /// Returns (root, parity of x relative to root).
  std::pair<int, int> find(int x) {
    if (parent_[x] == x) return {x, 0};
    auto [root, p] = find(parent_[x]);
    parent_[x] = root;
    parity_[x] ^= p;
    return {root, parity_[x]};
  }

  /// Records value(a) xor value(b) == relation.
  bool unite(int a, int b, int relation) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == relation;
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ relation;
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> parity_;
};

}  // namespace eventri
