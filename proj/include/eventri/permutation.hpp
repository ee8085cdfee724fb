#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "eventri/error.hpp"

namespace eventri {

/// Bijection of {0..m-1}. Composition reads right to left: (a * b)(x) = a(b(x)).
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
      if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v])
        throw Error(ErrorKind::Syntax, "not a permutation: " + to_list_string());
      seen[v] = 1;
    }
  }

  static Permutation identity(int m) {
    std::vector<int> images(m);
    std::iota(images.begin(), images.end(), 0);
    return Permutation(std::move(images), unchecked_tag{});
  }

  /// Parses disjoint-cycle notation such as "(032)" or "(02)(13)" on m letters.
  /// Multi-digit letters are written with commas: "(10,11)".
  static Permutation from_cycles(int m, std::string_view text) {
    std::vector<int> images(m);
    std::iota(images.begin(), images.end(), 0);
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (text[pos] == ' ') {
        ++pos;
        continue;
      }
      if (text[pos] != '(') throw Error(ErrorKind::Syntax, "bad cycle notation");
      auto close = text.find(')', pos);
      if (close == std::string_view::npos) throw Error(ErrorKind::Syntax, "bad cycle notation");
      auto body = text.substr(pos + 1, close - pos - 1);
      std::vector<int> cycle;
      if (body.find(',') != std::string_view::npos) {
        std::string token;
        std::istringstream in{std::string(body)};
        while (std::getline(in, token, ',')) cycle.push_back(std::stoi(token));
      } else {
        for (char c : body) cycle.push_back(c - '0');
      }
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        int from = cycle[i];
        int to = cycle[(i + 1) % cycle.size()];
        if (from < 0 || from >= m || to < 0 || to >= m)
          throw Error(ErrorKind::Syntax, "cycle letter out of range");
        images[from] = to;
      }
      pos = close + 1;
    }
    return Permutation(std::move(images));
  }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const {
    std::vector<int> out(images_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = images_[rhs.images_[i]];
    return Permutation(std::move(out), unchecked_tag{});
  }

  Permutation inverse() const {
    std::vector<int> out(images_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[images_[i]] = static_cast<int>(i);
    return Permutation(std::move(out), unchecked_tag{});
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i)) return false;
    return true;
  }

  /// +1 for even permutations, -1 for odd ones.
  int sign() const {
    int transpositions = 0;
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = static_cast<int>(i); !seen[j]; j = images_[j]) {
        seen[j] = 1;
        ++len;
      }
      transpositions += len - 1;
    }
    return transpositions % 2 == 0 ? 1 : -1;
  }

  /// Image of a vertex set encoded as a bitmask.
  std::uint32_t apply_mask(std::uint32_t mask) const {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (mask & (1u << i)) out |= 1u << images_[i];
    return out;
  }

  /// Sorted lengths of all cycles, fixed points included.
  std::vector<int> cycle_type() const {
    std::vector<int> lengths;
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = static_cast<int>(i); !seen[j]; j = images_[j]) {
        seen[j] = 1;
        ++len;
      }
      lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
  }

  int order() const {
    int result = 1;
    for (int len : cycle_type()) result = std::lcm(result, len);
    return result;
  }

  /// Disjoint cycles, fixed points omitted; identity prints as "()".
  std::string to_cycle_string() const {
    const bool wide = images_.size() > 10;
    std::string out;
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == static_cast<int>(i)) continue;
      out += '(';
      bool first = true;
      for (int j = static_cast<int>(i); !seen[j]; j = images_[j]) {
        seen[j] = 1;
        if (wide && !first) out += ',';
        out += std::to_string(j);
        first = false;
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  std::string to_list_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(images_[i]);
    }
    return out + "]";
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  struct unchecked_tag {};
  Permutation(std::vector<int> images, unchecked_tag) : images_(std::move(images)) {}

  std::vector<int> images_;
};

}  // namespace eventri
