#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eventri/error.hpp"
#include "eventri/permutation.hpp"
#include "eventri/union_find.hpp"

namespace eventri {

/// Vertex masks are 32-bit, and skeleton tables are indexed by subsets of corners.
inline constexpr int kMaxDimension = 12;

/// Facet i of a simplex glued to facet vertex_map(i) of target_simplex.
struct Gluing {
  int target_simplex = -1;
  Permutation vertex_map;

  friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// A facet-pairing table over a disjoint union of n-simplices. Facet i is the facet opposite
/// corner i. Instances are always valid: the constructor enforces the involution axiom, rejects
/// unglued and self-glued facets, and requires a connected dual graph.
class Triangulation {
 public:
  struct Entry {
    int target = -1;
    std::vector<int> perm;  // empty marks an unglued facet
  };

  Triangulation(int dim, std::vector<std::vector<Entry>> table) : dim_(dim) {
    if (dim < 2) throw Error(ErrorKind::DimensionTooSmall, "dim must be at least 2, got " + std::to_string(dim));
    if (dim > kMaxDimension)
      throw Error(ErrorKind::UnsupportedDimension, "dim above " + std::to_string(kMaxDimension) + " is not supported");
    if (table.empty()) throw Error(ErrorKind::Syntax, "at least one simplex is required");
    const int n_simplices = static_cast<int>(table.size());
    gluings_.resize(n_simplices);
    for (int s = 0; s < n_simplices; ++s) {
      if (static_cast<int>(table[s].size()) != dim + 1)
        throw Error(ErrorKind::Syntax, "simplex " + std::to_string(s) + " must list " + std::to_string(dim + 1) + " gluings");
      for (int i = 0; i <= dim; ++i) {
        const Entry& e = table[s][i];
        const std::string where = "simplex " + std::to_string(s) + " facet " + std::to_string(i);
        if (e.perm.empty() || e.target < 0) throw Error(ErrorKind::UngluedFacet, where + " is not glued");
        if (e.target >= n_simplices) throw Error(ErrorKind::Syntax, where + " targets missing simplex " + std::to_string(e.target));
        if (static_cast<int>(e.perm.size()) != dim + 1)
          throw Error(ErrorKind::Syntax, where + " needs a permutation of length " + std::to_string(dim + 1));
        Permutation p = [&] {
          try {
            return Permutation(e.perm);
          } catch (const Error&) {
            throw Error(ErrorKind::Syntax, where + " has a non-bijective vertex map");
          }
        }();
        if (e.target == s && p(i) == i) {
          throw Error(ErrorKind::SelfGluing,
                      where + (p.is_identity() ? " is glued to itself by the identity" : " is glued to itself"));
        }
        gluings_[s].push_back(Gluing{e.target, std::move(p)});
      }
    }
    for (int s = 0; s < n_simplices; ++s) {
      for (int i = 0; i <= dim; ++i) {
        const Gluing& g = gluings_[s][i];
        const int t = g.target_simplex;
        const int j = g.vertex_map(i);
        const Gluing& back = gluings_[t][j];
        if (back.target_simplex != s || back.vertex_map != g.vertex_map.inverse()) {
          throw Error(ErrorKind::InvolutionViolation,
                      "simplex " + std::to_string(s) + " facet " + std::to_string(i) + " -> simplex " +
                          std::to_string(t) + " facet " + std::to_string(j) + " is not reciprocated by the inverse map");
        }
      }
    }
    UnionFind uf(n_simplices);
    for (int s = 0; s < n_simplices; ++s)
      for (const auto& g : gluings_[s]) uf.unite(s, g.target_simplex);
    for (int s = 1; s < n_simplices; ++s)
      if (uf.find(s) != uf.find(0))
        throw Error(ErrorKind::DisconnectedDualGraph, "simplex " + std::to_string(s) + " is not connected to simplex 0");
  }

  int dim() const { return dim_; }
  int num_simplices() const { return static_cast<int>(gluings_.size()); }
  int num_corners() const { return dim_ + 1; }

  const Gluing& gluing(int simplex, int facet) const { return gluings_.at(simplex).at(facet); }
  int target_simplex(int simplex, int facet) const { return gluing(simplex, facet).target_simplex; }
  int target_facet(int simplex, int facet) const { return gluing(simplex, facet).vertex_map(facet); }
  const Permutation& vertex_map(int simplex, int facet) const { return gluing(simplex, facet).vertex_map; }

  std::uint32_t full_mask() const { return (1u << (dim_ + 1)) - 1; }

  std::vector<std::vector<Entry>> entries() const {
    std::vector<std::vector<Entry>> out(gluings_.size());
    for (std::size_t s = 0; s < gluings_.size(); ++s)
      for (const auto& g : gluings_[s]) out[s].push_back(Entry{g.target_simplex, g.vertex_map.images()});
    return out;
  }

  friend bool operator==(const Triangulation& a, const Triangulation& b) {
    return a.dim_ == b.dim_ && a.gluings_ == b.gluings_;
  }

 private:
  int dim_;
  std::vector<std::vector<Gluing>> gluings_;
};

/// Serializes to {"dim", "simplices", "gluings": [[{"s", "perm"}, ...], ...]}.
inline nlohmann::json to_json(const Triangulation& tri) {
  nlohmann::json gluings = nlohmann::json::array();
  for (int s = 0; s < tri.num_simplices(); ++s) {
    nlohmann::json row = nlohmann::json::array();
    for (int i = 0; i <= tri.dim(); ++i)
      row.push_back({{"s", tri.target_simplex(s, i)}, {"perm", tri.vertex_map(s, i).images()}});
    gluings.push_back(std::move(row));
  }
  return {{"dim", tri.dim()}, {"simplices", tri.num_simplices()}, {"gluings", std::move(gluings)}};
}

inline Triangulation triangulation_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorKind::Syntax, "top level must be an object");
    for (const char* key : {"dim", "simplices", "gluings"})
      if (!doc.contains(key)) throw Error(ErrorKind::Syntax, std::string("missing key \"") + key + "\"");
    const int dim = doc.at("dim").get<int>();
    const int n = doc.at("simplices").get<int>();
    const auto& rows = doc.at("gluings");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw Error(ErrorKind::Syntax, "\"gluings\" must list exactly " + std::to_string(n) + " simplices");
    std::vector<std::vector<Triangulation::Entry>> table(n);
    for (int s = 0; s < n; ++s) {
      const auto& row = rows[s];
      if (!row.is_array()) throw Error(ErrorKind::Syntax, "gluings of simplex " + std::to_string(s) + " must be an array");
      for (std::size_t i = 0; i < row.size(); ++i) {
        const auto& cell = row[i];
        if (cell.is_null()) {
          table[s].push_back({});
          continue;
        }
        if (!cell.is_object() || !cell.contains("s") || !cell.contains("perm"))
          throw Error(ErrorKind::Syntax,
                      "simplex " + std::to_string(s) + " facet " + std::to_string(i) + " needs \"s\" and \"perm\"");
        table[s].push_back({cell.at("s").get<int>(), cell.at("perm").get<std::vector<int>>()});
      }
    }
    return Triangulation(dim, std::move(table));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, e.what());
  }
}

/// Parses the triangulation JSON format. Throws Error with the offending simplex and facet.
inline Triangulation parse_triangulation(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, e.what());
  }
  return triangulation_from_json(doc);
}

}  // namespace eventri
