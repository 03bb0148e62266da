#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vcert/belts.hpp"
#include "vcert/certifier.hpp"
#include "vcert/delaunay.hpp"
#include "vcert/errors.hpp"
#include "vcert/linalg.hpp"
#include "vcert/parallelotope.hpp"
#include "vcert/tiling_patch.hpp"
#include "vcert/voronoi.hpp"

namespace vcert {

using json = nlohmann::json;  // std::map-backed, so keys come out sorted

inline constexpr const char* kSchema = "voronoi-cert/1";

/// Lattice coordinates are kept well inside int64 so that the 2x2
/// determinants and scaled path sums cannot overflow on sane input.
inline constexpr std::int64_t kMaxCoordinate = std::int64_t{1} << 31;

// ---------------------------------------------------------------------------
// Scalars, vectors, matrices
// ---------------------------------------------------------------------------

inline json to_json(const Rat& r) { return to_string(r); }

inline json to_json(const RatVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline json to_json(const IntVector& v) { return json(v); }

inline json to_json(const RatMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

/// Accepts "p/q" strings and JSON integers.
inline Rat rat_from_json(const json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return to_rat(j.get<std::int64_t>());
  throw InvalidInput("expected a rational string \"p/q\" or an integer, got " + j.dump());
}

inline std::int64_t int_from_json(const json& j) {
  if (!j.is_number_integer()) throw InvalidInput("expected an integer, got " + j.dump());
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(kMaxCoordinate))
    throw InvalidInput("integer out of range: " + j.dump());
  const auto v = j.get<std::int64_t>();
  if (v > kMaxCoordinate || v < -kMaxCoordinate) throw InvalidInput("integer out of range: " + j.dump());
  return v;
}

inline RatVector rat_vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array, got " + j.dump());
  RatVector v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return v;
}

inline IntVector int_vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array, got " + j.dump());
  IntVector v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

inline RatMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("expected a non-empty matrix");
  std::vector<RatVector> rows;
  for (const auto& r : j) rows.push_back(rat_vector_from_json(r));
  for (const auto& r : rows)
    if (r.size() != rows.front().size() || r.empty()) throw InvalidInput("matrix rows have unequal lengths");
  return RatMatrix::from_rows(rows);
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

inline json to_json(const Parallelotope& P) {
  json pairs = json::array();
  for (const auto& p : P.pairs) pairs.push_back({{"q", to_json(p.q)}, {"t", to_json(p.t)}});
  return {{"schema", kSchema}, {"dim", P.dim}, {"pairs", pairs}};
}

inline json to_json(const HalfspaceSystem& h) {
  json hs = json::array();
  for (const auto& s : h.halfspaces) hs.push_back({{"normal", to_json(s.normal)}, {"offset", to_json(s.offset)}});
  return {{"schema", kSchema}, {"dim", h.dim}, {"halfspaces", hs}};
}

/// One of the three accepted input shapes.
using Instance = std::variant<Parallelotope, LatticeForm, HalfspaceSystem>;

namespace detail {

inline std::size_t dim_from_json(const json& j) {
  if (!j.contains("dim")) throw InvalidInput("missing \"dim\"");
  const auto n = int_from_json(j.at("dim"));
  if (n < 1) throw InvalidInput("\"dim\" must be positive");
  return static_cast<std::size_t>(n);
}

inline void check_schema(const json& j) {
  if (j.contains("schema") && j.at("schema") != kSchema)
    throw InvalidInput("unsupported schema " + j.at("schema").dump());
}

}  // namespace detail

/// Parses a Parallelotope and runs validate() on it.
inline Parallelotope parallelotope_from_json(const json& j) {
  if (!j.is_object() || !j.contains("pairs")) throw InvalidInput("expected {\"dim\", \"pairs\"}");
  detail::check_schema(j);
  Parallelotope P{detail::dim_from_json(j), {}};
  if (!j.at("pairs").is_array()) throw InvalidInput("\"pairs\" must be an array");
  for (const auto& p : j.at("pairs")) {
    if (!p.is_object() || !p.contains("q") || !p.contains("t")) throw InvalidInput("each pair needs \"q\" and \"t\"");
    P.pairs.push_back({rat_vector_from_json(p.at("q")), int_vector_from_json(p.at("t"))});
  }
  validate(P);
  return P;
}

inline HalfspaceSystem halfspaces_from_json(const json& j) {
  detail::check_schema(j);
  HalfspaceSystem h{detail::dim_from_json(j), {}};
  if (!j.at("halfspaces").is_array()) throw InvalidInput("\"halfspaces\" must be an array");
  for (const auto& s : j.at("halfspaces")) {
    if (!s.is_object() || !s.contains("normal") || !s.contains("offset"))
      throw InvalidInput("each halfspace needs \"normal\" and \"offset\"");
    Halfspace hs{rat_vector_from_json(s.at("normal")), rat_from_json(s.at("offset"))};
    if (hs.normal.size() != h.dim) throw InvalidInput("halfspace normal has wrong dimension");
    if (is_zero(hs.normal)) throw InvalidInput("zero halfspace normal");
    h.halfspaces.push_back(std::move(hs));
  }
  if (h.halfspaces.empty()) throw InvalidInput("no halfspaces");
  return h;
}

inline LatticeForm form_from_json(const json& j) {
  const RatMatrix m = matrix_from_json(j);
  if (!m.square()) throw InvalidInput("Gram matrix is not square");
  if (!m.is_symmetric()) throw InvalidInput("Gram matrix is not symmetric");
  return LatticeForm(m);
}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("instance must be a JSON object");
  const int shapes = int(j.contains("pairs")) + int(j.contains("gram")) + int(j.contains("halfspaces"));
  if (shapes != 1) throw InvalidInput("instance must have exactly one of \"pairs\", \"gram\", \"halfspaces\"");
  if (j.contains("pairs")) return parallelotope_from_json(j);
  if (j.contains("halfspaces")) return halfspaces_from_json(j);
  detail::check_schema(j);
  return form_from_json(j.at("gram"));
}

/// Lattice forms go through the Voronoi builder; raw halfspaces are paired
/// into facet/lattice vector pairs.
inline Parallelotope as_parallelotope(const Instance& inst) {
  if (const auto* p = std::get_if<Parallelotope>(&inst)) return *p;
  if (const auto* f = std::get_if<LatticeForm>(&inst)) return build_voronoi(*f);
  return to_parallelotope(std::get<HalfspaceSystem>(inst));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json to_json(const Path& p) { return {{"start", to_json(p.start)}, {"steps", encode_steps(p.steps)}}; }

inline json to_json(const Belt& b) {
  json j = {{"kind", static_cast<int>(b.kind)}, {"indices", b.indices}};
  if (b.kind == BeltKind::Three) j["eps"] = b.eps;
  return j;
}

inline json to_json(const VenkovReport& r) {
  json sizes = json::array();
  for (const auto& b : r.belt_sizes) sizes.push_back({{"indices", b.indices}, {"facets", b.facets}});
  json belts = json::array();
  for (const auto& b : r.belts) belts.push_back(to_json(b));
  return {{"pass", r.pass},
          {"central_symmetry", r.central_symmetry},
          {"facet_symmetry", r.facet_symmetry},
          {"belt_sizes", sizes},
          {"belts", belts},
          {"failures", r.failures},
          {"vertex_count", r.vertex_count}};
}

inline json to_json(const SymmetryResult& s) {
  json w = nullptr;
  if (s.witness) {
    const auto [i, j] = *s.witness;
    w = {{"i", i}, {"j", j}, {"qi_tj", to_json(s.table(i, j))}, {"qj_ti", to_json(s.table(j, i))}};
  }
  return {{"symmetric", s.symmetric}, {"witness", w}};
}

struct CertificateOptions {
  bool approx_map = false;
};

/// A = diag(sqrt d) L^T with D = A^T A; floating point, for display only.
inline json approximate_map(const LdltFactors& f) {
  const std::size_t n = f.d.size();
  json a = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    const double s = std::sqrt(f.d[i].get_d());
    for (std::size_t j = 0; j < n; ++j) row.push_back(s * f.L(j, i).get_d());
    a.push_back(row);
  }
  return a;
}

inline json to_json(const Certificate& c, const CertificateOptions& opt = {}) {
  json j;
  j["schema"] = kSchema;
  j["verdict"] = c.passed() ? "pass" : "fail";
  j["failed_condition"] = c.passed() ? json(nullptr) : json(c.failed_condition);
  j["detail"] = c.passed() ? json(nullptr) : json(c.detail);
  j["venkov"] = to_json(c.venkov);
  j["beta"] = nullptr;
  j["kernel_dim"] = nullptr;
  j["components"] = nullptr;
  if (c.canonical.scaling) {
    j["beta"] = to_json(c.canonical.scaling->beta);
    j["kernel_dim"] = c.canonical.scaling->kernel_dim;
    j["components"] = c.canonical.scaling->components;
  }
  j["witness"] = nullptr;
  if (c.symmetry && c.symmetry->witness) j["witness"] = to_json(*c.symmetry)["witness"];
  j["D"] = c.D ? to_json(c.D->matrix()) : json(nullptr);
  j["ldlt"] = nullptr;
  if (c.factors) j["ldlt"] = {{"L", to_json(c.factors->L)}, {"d", to_json(c.factors->d)}};
  j["positive_definite"] = c.positive_definite;
  j["pegs_ok"] = c.pegs_ok();
  j["generatrissa_ok"] = c.generatrissa_ok();
  j["seed"] = c.seed;
  j["radius"] = c.radius;
  if (opt.approx_map && c.factors && c.positive_definite)
    j["approximate_map"] = {{"approximate", true}, {"A", approximate_map(*c.factors)}};
  return j;
}

inline json to_json(const Patch& p) {
  std::vector<std::size_t> by_depth(p.radius + 1, 0);
  for (auto d : p.depth) ++by_depth[d];
  json centers = json::array();
  for (const auto& c : p.centers) centers.push_back(to_json(c));
  return {{"radius", p.radius}, {"centers", centers}, {"center_count", p.size()}, {"edge_count", p.edges.size()},
          {"by_depth", by_depth}};
}

inline json to_json(const IdentityCheck& c) {
  return {{"name", c.name},
          {"checked", c.checked},
          {"failed", c.failed},
          {"witness", c.witness ? to_json(*c.witness) : json(nullptr)}};
}

inline json to_json(const PhiIdentityReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"pass", r.pass}, {"walks", r.walks}, {"nonzero_quadrangles", r.nonzero_quadrangles}, {"checks", checks}};
}

inline json to_json(const CircuitReport& r) {
  return {{"pass", r.pass},
          {"triangles", r.triangles},
          {"circuits", r.circuits},
          {"witness", r.witness ? to_json(*r.witness) : json(nullptr)}};
}

inline json to_json(const PrimitivityReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    std::map<std::string, std::size_t> hist;
    for (auto c : l.counts) ++hist[std::to_string(c)];
    levels.push_back({{"k", l.k}, {"expected", l.expected}, {"primitive", l.primitive}, {"face_count", l.counts.size()},
                      {"tiles_per_face", hist}});
  }
  return {{"levels", levels}};
}

inline json to_json(const PegReport& r) {
  json mult = json::array();
  for (const auto& m : r.multipliers) mult.push_back(m ? to_json(*m) : json(nullptr));
  json w = nullptr;
  if (r.witness) w = {{"from", r.witness->from}, {"to", r.witness->to}, {"pair", r.witness->pair}};
  return {{"pass", r.pass}, {"edges", r.edges}, {"multipliers", mult}, {"witness", w}};
}

inline json to_json(const GeneratrissaReport& r) {
  return {{"pass", r.pass},
          {"interior_checks", r.interior_checks},
          {"boundary_checks", r.boundary_checks},
          {"recursion_checks", r.recursion_checks},
          {"failures", r.failures}};
}

inline json to_json(const PathIndependenceReport& r) {
  json pair = nullptr;
  if (r.disagreeing_pair) pair = json::array({to_json(r.disagreeing_pair->first), to_json(r.disagreeing_pair->second)});
  return {{"paths", r.paths}, {"agree", r.agree}, {"disagreeing_pair", pair}};
}

inline json to_json(const DelaunayCell& c) {
  json pts = json::array();
  for (const auto& p : c.lattice_points) pts.push_back(to_json(p));
  return {{"center", to_json(c.center)},
          {"lattice_points", pts},
          {"point_count", c.lattice_points.size()},
          {"squared_radius", to_json(c.squared_radius)},
          {"matches_tiles", c.matches_tiles}};
}

inline json to_json(const DualityReport& r) {
  json cells = json::array();
  std::map<std::string, std::size_t> by_count;
  for (const auto& c : r.cells) {
    cells.push_back(to_json(c));
    ++by_count[std::to_string(c.lattice_points.size())];
  }
  return {{"pass", r.pass()},
          {"cells", cells},
          {"cell_count", r.cells.size()},
          {"cells_by_point_count", by_count},
          {"translation_classes", r.translation_classes},
          {"distinct", r.distinct},
          {"spanning", r.spanning},
          {"matches_tiles", r.matches_tiles},
          {"complete", r.complete},
          {"empty_ellipsoid", r.empty_ellipsoid},
          {"orthogonal", r.orthogonal ? json(*r.orthogonal) : json(nullptr)},
          {"failures", r.failures}};
}

}  // namespace vcert
