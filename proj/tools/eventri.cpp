// eventri: command-line front end for even triangulation analysis.
//
// Exit codes: 0 success, 1 invalid input, 2 precondition failure, 3 internal error.

#include <openssl/evp.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eventri/cover.hpp"
#include "eventri/normal.hpp"
#include "eventri/report.hpp"
#include "eventri/symrep.hpp"
#include "eventri/z2.hpp"

namespace {

using nlohmann::json;
using namespace eventri;

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kInvalid = 1, kPrecondition = 2, kInternal = 3 };

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotEven:
    case ErrorKind::NonTrivialImage:
    case ErrorKind::RelatorViolation:
    case ErrorKind::PreconditionViolation:
    case ErrorKind::NonsingularInput:
    case ErrorKind::NotSymmetric:
    case ErrorKind::NonzeroDiagonal:
    case ErrorKind::WeightsNotZeroOne:
    case ErrorKind::InadmissibleSolution:
      return kPrecondition;
    case ErrorKind::InternalError:
      return kInternal;
    default:
      return kInvalid;
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Syntax, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Outcome {
  json report;
  int code = kOk;
};

/// Runs one command on one input file and wraps the payload or the error.
template <class Fn>
Outcome run(const std::string& command, const std::string& path, Fn&& fn) {
  Outcome out;
  out.report = {{"command", command}, {"version", kVersion}, {"input", path}};
  std::string text;
  try {
    text = read_file(path);
    out.report["input_digest"] = "sha256:" + sha256_hex(text);
  } catch (const Error& e) {
    out.report["input_digest"] = nullptr;
    out.report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    out.code = kInvalid;
    return out;
  }
  try {
    out.report["payload"] = fn(text);
  } catch (const Error& e) {
    out.report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    out.code = exit_code_for(e.kind());
  } catch (const std::exception& e) {
    out.report["error"] = {{"kind", "InternalError"}, {"message", e.what()}};
    out.code = kInternal;
  }
  return out;
}

void print_text(const json& report, std::ostream& os) {
  os << report.value("command", "?") << " " << report.value("input", "") << "\n";
  if (report.contains("error")) {
    os << "  error: " << report["error"]["message"].get<std::string>() << "\n";
    return;
  }
  for (const auto& [key, value] : report["payload"].items()) {
    std::string v = value.is_string() ? value.get<std::string>() : value.dump();
    if (v.size() > 120) v = v.substr(0, 117) + "...";
    os << "  " << key << ": " << v << "\n";
  }
}

int emit(const std::vector<Outcome>& outcomes, const std::string& format) {
  int code = kOk;
  for (const auto& o : outcomes) code = std::max(code, o.code);
  if (format == "text") {
    for (const auto& o : outcomes) print_text(o.report, std::cerr);
  } else if (outcomes.size() == 1) {
    std::cout << outcomes.front().report.dump(2) << "\n";
  } else {
    json all = json::array();
    for (const auto& o : outcomes) all.push_back(o.report);
    std::cout << all.dump(2) << "\n";
  }
  return code;
}

/// Runs `job` for each file, on up to `jobs` threads; results keep the input order.
template <class Fn>
std::vector<Outcome> run_all(const std::vector<std::string>& files, int jobs, Fn&& job) {
  std::vector<Outcome> out(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) out[i] = job(files[i]);
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

json degrees_json(const Triangulation& tri) {
  const auto faces = face_orbits(tri, tri.dim() - 2);
  return faces.degrees();
}

json validate_payload(const std::string& text) {
  const auto tri = parse_triangulation(text);
  json p = {{"valid", true},
            {"dim", tri.dim()},
            {"simplices", tri.num_simplices()},
            {"vertices", vertex_count(tri)},
            {"orientable", orientability(tri)},
            {"even", is_even(tri).even}};
  p["vertex_links"] = tri.dim() == 3 ? json(vertex_link_euler(tri)) : json(nullptr);
  return p;
}

json analyze_payload(const std::string& text, int base, const std::vector<int>& ks, bool surfaces) {
  const auto tri = parse_triangulation(text);
  const int n = tri.dim();
  const auto parity = is_even(tri);
  if (!parity.even) {
    throw Error(ErrorKind::NotEven, "(n-2)-face orbit " + std::to_string(*parity.odd_orbit) + " has odd degree " +
                                        std::to_string(parity.witness_degree) + " (simplex " +
                                        std::to_string(parity.witness->simplex) + ", vertex mask " +
                                        std::to_string(parity.witness->vertices) + ")");
  }
  const auto rep = canonical_representation(tri, base);
  json p = {{"dim", n},
            {"simplices", tri.num_simplices()},
            {"vertices", vertex_count(tri)},
            {"orientable", orientability(tri)},
            {"degrees", degrees_json(tri)},
            {"even", true},
            {"canonical", to_json(rep)}};
  p["vertex_links"] = n == 3 ? json(vertex_link_euler(tri)) : json(nullptr);
  std::vector<int> chosen = ks;
  if (chosen.empty())
    for (int k = 2; 2 * k <= n + 1; ++k) chosen.push_back(k);
  json induced = json::array();
  json hypersurfaces = json::array();
  for (int k : chosen) {
    const auto ind = induced_representation(rep, k);
    induced.push_back(to_json(ind));
    if (surfaces) {
      const auto h = assemble_hypersurface(tri, canonical_solution(tri, k));
      json hr = hypersurface_report(tri, h, k, &ind.image);
      const auto corr = component_rep_correspondence(tri, rep, k);
      hr["fixed_classes"] = corr.fixed_classes;
      hr["image_orbits"] = corr.image_orbits;
      hypersurfaces.push_back(std::move(hr));
    }
  }
  p["induced"] = induced;
  p["hypersurfaces"] = surfaces ? hypersurfaces : json(nullptr);
  p["z2_rank_bound"] = z2_rank_bound(tri, rep);
  return p;
}

PermutationAction parse_action(const Triangulation& tri, const std::string& choice) {
  if (choice == "trivial") return trivial_action(tri);
  if (choice == "canonical") return regular_action(canonical_representation(tri));
  if (choice.rfind("induced:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(choice.substr(8));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Syntax, "bad action " + choice);
    }
    return regular_action(induced_representation(canonical_representation(tri), k));
  }
  json doc;
  try {
    doc = json::parse(read_file(choice));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Syntax, e.what());
  }
  return action_from_json(doc);
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Syntax, "cannot write " + path);
  out << doc.dump(2) << "\n";
}

json cover_payload(const std::string& text, const std::string& action, const std::string& output,
                   const std::string& projection_out) {
  const auto tri = parse_triangulation(text);
  if (action != "trivial" && !is_even(tri).even) throw Error(ErrorKind::NotEven, "covers from representations need an even triangulation");
  const auto a = parse_action(tri, action);
  const auto cover = build_cover(tri, a);
  json triangulations = json::array();
  for (const auto& c : cover.components) triangulations.push_back(to_json(c.triangulation));
  json cover_doc = triangulations.size() == 1 ? triangulations.front() : triangulations;
  const json proj = projection_json(cover);
  if (!output.empty()) write_json(output, cover_doc);
  if (!projection_out.empty()) write_json(projection_out, proj);
  return {{"action", a.source}, {"cover", cover_doc}, {"projection", proj}, {"verify", to_json(verify_cover(tri, cover))}};
}

json parity_payload(const std::string& text, bool symmetric) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Syntax, e.what());
  }
  const auto in = z2::matrix_from_json(doc);
  const auto result = symmetric ? z2::symmetric_parity_normalize(in.matrix) : z2::parity_normalize(in.matrix);
  json p = {{"symmetric", symmetric},
            {"reduced_mod_2", in.reduced},
            {"input", z2::to_json(in.matrix)},
            {"matrix", z2::to_json(result.matrix)},
            {"ops", z2::to_json(result.ops)},
            {"left", z2::to_json(result.left)}};
  p["right"] = z2::to_json(result.right);
  return p;
}

json color_payload(const std::string& text) {
  const auto tri = parse_triangulation(text);
  const auto labelling = vertex_labelling(tri);
  const auto haken = haken_cell_check(tri);
  json violations = json::array();
  for (const auto& v : haken.violations) violations.push_back({{"kind", v.kind}, {"face_dim", v.face_dim}, {"vertices", v.vertices}});
  return {{"labels", labelling.labels},
          {"proper", labelling.proper},
          {"haken", haken.ok},
          {"haken_violations", violations}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis of even triangulations of pseudo-manifolds"};
  app.require_subcommand(1);
  std::string format = "json";
  if (const char* env = std::getenv("EVENTRI_FORMAT")) format = env;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.set_version_flag("--version", kVersion);
  int jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads for multiple input files")->check(CLI::PositiveNumber);

  std::vector<std::string> files;

  auto* validate = app.add_subcommand("validate", "Parse a gluing table and report basic invariants");
  validate->add_option("files", files, "Triangulation JSON files")->required();

  int base = 0;
  std::vector<int> ks;
  bool no_surfaces = false;
  auto* analyze = app.add_subcommand("analyze", "Degrees, representations, hypersurfaces and rank bound");
  analyze->add_option("files", files, "Triangulation JSON files")->required();
  analyze->add_option("--base", base, "Base simplex of the dual spanning tree");
  analyze->add_option("--k", ks, "Partition sizes for induced representations");
  analyze->add_flag("--no-surfaces", no_surfaces, "Skip hypersurface assembly");

  std::string cover_file, action = "canonical", output, projection_out;
  auto* cover = app.add_subcommand("cover", "Build a finite covering triangulation");
  cover->add_option("file", cover_file, "Triangulation JSON file")->required();
  cover->add_option("--action", action, "canonical | induced:k | trivial | action JSON file");
  cover->add_option("--output", output, "Write the cover triangulation here");
  cover->add_option("--projection", projection_out, "Write the projection here");

  std::string matrix_file;
  bool symmetric = false;
  auto* parity = app.add_subcommand("parity", "Normalise a Z2 matrix to even row and column sums");
  parity->add_option("file", matrix_file, "Matrix JSON file")->required();
  parity->add_flag("--symmetric", symmetric, "Use simultaneous row and column operations");

  auto* color = app.add_subcommand("color", "Vertex labelling and Haken cell conditions");
  color->add_option("files", files, "Triangulation JSON files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }
  if (format != "json" && format != "text") {
    std::cerr << "unknown format " << format << "\n";
    return kInvalid;
  }

  try {
    if (*validate)
      return emit(run_all(files, jobs, [](const std::string& f) { return run("validate", f, validate_payload); }), format);
    if (*analyze)
      return emit(run_all(files, jobs,
                          [&](const std::string& f) {
                            return run("analyze", f, [&](const std::string& t) { return analyze_payload(t, base, ks, !no_surfaces); });
                          }),
                  format);
    if (*cover)
      return emit({run("cover", cover_file, [&](const std::string& t) { return cover_payload(t, action, output, projection_out); })},
                  format);
    if (*parity)
      return emit({run("parity", matrix_file, [&](const std::string& t) { return parity_payload(t, symmetric); })}, format);
    if (*color)
      return emit(run_all(files, jobs, [](const std::string& f) { return run("color", f, color_payload); }), format);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
