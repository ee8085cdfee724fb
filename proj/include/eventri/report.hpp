#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "eventri/cover.hpp"
#include "eventri/normal.hpp"
#include "eventri/symrep.hpp"

namespace eventri {

using nlohmann::json;

inline json to_json(const GroupInfo& g) {
  json elements = json::array();
  for (const auto& e : g.elements) elements.push_back(e.to_cycle_string());
  return {{"label", g.label},
          {"order", g.order},
          {"degree", g.degree},
          {"orbits", g.orbit_count},
          {"transitive", g.transitive},
          {"abelian", g.abelian},
          {"abelian_invariants", g.abelian_invariants},
          {"elements", elements}};
}

inline json to_json(const RepReport& rep) {
  json gens = json::array();
  for (const auto& g : rep.generators)
    gens.push_back({{"edge", {{"s", g.edge.s}, {"i", g.edge.i}, {"t", g.edge.t}, {"j", g.edge.j}}},
                    {"perm", g.perm.to_cycle_string()},
                    {"images", g.perm.images()}});
  bool relators_ok = true;
  for (const auto& r : rep.relator_checks) relators_ok &= r.perm.is_identity();
  json out = {{"base", rep.base}, {"degree", rep.degree}, {"generators", gens}, {"relators_trivial", relators_ok},
              {"image", to_json(rep.image)}};
  if (rep.partition_size > 1) {
    out["k"] = rep.partition_size;
    out["classes"] = rep.classes;
  }
  return out;
}

/// Per-component summary of a hypersurface; surface data is null outside dim 3.
inline json hypersurface_report(const Triangulation& tri, const Hypersurface& h, int k, const GroupInfo* induced) {
  std::vector<SurfaceComponent> surfaces;
  if (tri.dim() == 3) surfaces = surface_analysis(tri, h);
  json comps = json::array();
  for (std::size_t c = 0; c < h.components.size(); ++c) {
    json entry = {{"cells", h.components[c].cells.size()}, {"embedded", h.components[c].embedded}};
    if (!surfaces.empty()) {
      entry["chi"] = surfaces[c].euler_characteristic;
      entry["orientable"] = surfaces[c].orientable;
      entry["two_sided"] = surfaces[c].two_sided;
      entry["label"] = surfaces[c].label;
    } else {
      entry["chi"] = nullptr;
      entry["orientable"] = nullptr;
      entry["two_sided"] = nullptr;
      entry["label"] = nullptr;
    }
    comps.push_back(std::move(entry));
  }
  json branched = json::array();
  for (const auto& b : branch_locus(tri, h)) branched.push_back({{"orbit", b.orbit}, {"rotation_cycles", b.rotation_cycles}});
  json out = {{"k", k}, {"components", comps}, {"branched_orbits", branched}};
  out["induced_image"] = induced ? to_json(*induced) : json(nullptr);
  return out;
}

inline json to_json(const CoverReport& r) {
  json out = {{"sheets", r.sheets},     {"simplices", r.simplices}, {"components", r.components},
              {"connected", r.connected}, {"even", r.even},           {"vertex_count", r.vertex_count},
              {"projection_ok", r.projection_ok}};
  out["induced_trivial"] = r.induced_trivial ? json(*r.induced_trivial) : json(nullptr);
  if (r.quad_surface) {
    out["quad_surface"] = {{"components", r.quad_surface->components},
                           {"embedded", r.quad_surface->embedded},
                           {"total_chi", r.quad_surface->total_euler_characteristic}};
  } else {
    out["quad_surface"] = nullptr;
  }
  return out;
}

inline json projection_json(const CoverTriangulation& cover) {
  json comps = json::array();
  for (const auto& c : cover.components) {
    json proj = json::array();
    for (auto [s, sheet] : c.projection) proj.push_back({s, sheet});
    comps.push_back(proj);
  }
  json out = {{"sheets", cover.sheets}};
  out["projection"] = comps.size() == 1 ? comps.front() : comps;
  return out;
}

}  // namespace eventri
