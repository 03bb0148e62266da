#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "vcert/belts.hpp"
#include "vcert/certifier.hpp"
#include "vcert/delaunay.hpp"
#include "vcert/errors.hpp"
#include "vcert/json_io.hpp"
#include "vcert/tiling_patch.hpp"
#include "vcert/vertices.hpp"
#include "vcert/voronoi.hpp"

namespace vcert::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct Options {
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> radius;
  std::size_t samples = 100;
  bool approx_map = false;
};

struct Result {
  json body;
  int exit_code = 0;
};

enum ExitCode : int { kPass = 0, kFail = 1, kInvalid = 2 };

/// Reads a file, or standard input for "-".
inline std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Instance read_instance(const std::string& path) { return instance_from_json(parse_json_text(read_input(path))); }

namespace detail {

inline std::size_t radius_or(const Options& o, std::size_t fallback) {
  const std::size_t r = o.radius.value_or(fallback);
  if (r > 4) throw InvalidInput("patch radius is limited to 4");
  return r;
}

inline std::int64_t parse_int(std::string_view s, const char* what) {
  const Rat r = parse_rat(s);
  if (!is_integer(r) || !r.get_num().fits_slong_p()) throw InvalidInput(std::string(what) + " must be an integer");
  return r.get_num().get_si();
}

inline bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

}  // namespace detail

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

/// Generator names: cube:n, hexagonal, fcc, gram:<matrix JSON>,
/// affine:<matrix JSON> and perturb:i,beta. The last two transform
/// `instance_path`.
inline Result cmd_gen(const std::string& name, const std::optional<std::string>& instance_path = std::nullopt) {
  const bool needs_instance = detail::starts_with(name, "affine:") || detail::starts_with(name, "perturb:");
  if (needs_instance != instance_path.has_value())
    throw InvalidInput(needs_instance ? "generator " + name + " needs an instance argument"
                                      : "generator " + name + " takes no instance argument");
  Parallelotope P;
  if (detail::starts_with(name, "cube:")) {
    const auto n = detail::parse_int(std::string_view(name).substr(5), "cube dimension");
    if (n < 1 || n > 6) throw InvalidInput("cube dimension must be in 1..6");
    P = build_voronoi(cube_form(static_cast<std::size_t>(n)));
  } else if (name == "hexagonal") {
    P = build_voronoi(hexagonal_form());
  } else if (name == "fcc") {
    P = build_voronoi(fcc_form());
  } else if (detail::starts_with(name, "gram:")) {
    P = build_voronoi(form_from_json(parse_json_text(name.substr(5))));
  } else if (detail::starts_with(name, "affine:")) {
    const RatMatrix A = matrix_from_json(parse_json_text(name.substr(7)));
    P = affine_image(as_parallelotope(read_instance(*instance_path)), A);
  } else if (detail::starts_with(name, "perturb:")) {
    const std::string args = name.substr(8);
    const auto comma = args.find(',');
    if (comma == std::string::npos) throw InvalidInput("perturb expects perturb:<index>,<beta>");
    const auto i = detail::parse_int(std::string_view(args).substr(0, comma), "perturb index");
    if (i < 0) throw InvalidInput("perturb index must be non-negative");
    const Rat beta = parse_rat(std::string_view(args).substr(comma + 1));
    P = scale_perturb(as_parallelotope(read_instance(*instance_path)), static_cast<std::size_t>(i), beta);
  } else {
    throw InvalidInput("unknown generator " + name);
  }
  validate(P);
  return {to_json(P), kPass};
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

inline Certificate certify_instance(const Instance& inst, const Options& o) {
  CertifyOptions co;
  co.radius = detail::radius_or(o, 2);
  co.seed = o.seed;
  co.samples = o.samples;
  return certify(as_parallelotope(inst), co);
}

inline Result cmd_certify(const std::string& path, const Options& o = {}) {
  const Certificate c = certify_instance(read_instance(path), o);
  return {to_json(c, CertificateOptions{o.approx_map}), c.passed() ? kPass : kFail};
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

inline Result report_venkov(const Instance& inst) {
  VenkovReport r;
  if (const auto* h = std::get_if<HalfspaceSystem>(&inst))
    r = venkov_check(*h);
  else
    r = venkov_check(as_parallelotope(inst));
  return {to_json(r), r.pass ? kPass : kFail};
}

inline Result report_belts(const Instance& inst) {
  const Parallelotope P = as_parallelotope(inst);
  const VenkovReport v = venkov_check(P);
  json belts = json::array();
  for (const auto& b : v.belts) belts.push_back(to_json(b));
  json failures = json::array();
  for (const auto& f : v.failures)
    if (f.rfind("(iii')", 0) == 0) failures.push_back(f);
  const bool ok = failures.empty();
  return {{{"belts", belts}, {"failures", failures}, {"pass", ok}}, ok ? kPass : kFail};
}

inline Result report_patch(const Instance& inst, const Options& o) {
  return {to_json(build_patch(as_parallelotope(inst), detail::radius_or(o, 2))), kPass};
}

/// Path-functional identities on the instance as given; the circuit rule
/// on the canonically rescaled instance when one exists.
inline Result report_identities(const Instance& inst, const Options& o) {
  const Parallelotope P = as_parallelotope(inst);
  const std::size_t radius = detail::radius_or(o, 2);
  const Patch patch = build_patch(P, radius);
  const PhiIdentityReport phi = check_phi_identities(P, patch, 6);
  json j = {{"phi", to_json(phi)}, {"radius", radius}, {"max_length", 6}, {"circuits", nullptr}};
  bool ok = phi.pass;
  const VenkovReport v = venkov_check(P);
  if (v.pass) {
    const CanonicalResult cr = canonical_scaling(P, v.belts);
    if (cr) {
      const Parallelotope S = apply_scaling(P, *cr.scaling);
      const CircuitReport circ = circuit_q_check(S, v.belts, build_patch(S, radius), 6);
      j["circuits"] = to_json(circ);
      ok = ok && circ.pass;
    }
  }
  j["pass"] = ok;
  return {j, ok ? kPass : kFail};
}

inline Result report_primitivity(const Instance& inst, const Options& o) {
  const Parallelotope P = as_parallelotope(inst);
  const VertexSet vs = enumerate_vertices(P);
  const std::size_t radius = detail::radius_or(o, 2);
  json j = to_json(primitivity_report(P, vs, build_patch(P, radius)));
  j["radius"] = radius;
  return {j, kPass};
}

/// Lattice forms are used directly; anything else must certify first and
/// the recovered form is used.
inline Result report_delaunay(const Instance& inst, const Options& o) {
  std::optional<LatticeForm> F;
  if (const auto* f = std::get_if<LatticeForm>(&inst)) {
    F = *f;
  } else {
    const Certificate c = certify_instance(inst, o);
    if (!c.passed())
      return {{{"pass", false}, {"failures", {"instance does not certify: " + c.failed_condition}}}, kFail};
    F = LatticeForm(*c.D);
  }
  std::optional<std::size_t> radius;
  if (o.radius) radius = detail::radius_or(o, 2);
  const DualityReport r = duality_check(*F, radius);
  json j = to_json(r);
  j["form"] = to_json(F->gram());
  return {j, r.pass() ? kPass : kFail};
}

inline Result report_pegs(const Instance& inst, const Options& o) {
  const Certificate c = certify_instance(inst, o);
  if (!c.D) return {{{"pass", false}, {"failures", {"no form recovered: " + c.failed_condition}}}, kFail};
  const Parallelotope S = apply_scaling(as_parallelotope(inst), *c.canonical.scaling);
  const PegReport r = verify_pegs(S, *c.D, build_patch(S, detail::radius_or(o, 2)));
  return {to_json(r), r.pass ? kPass : kFail};
}

struct GeneratrissaQuery {
  RatVector x;
  IntVector t;
};

/// Generatrissa checks on a certified instance, plus an optional point query
/// l(x; t) evaluated in closed form and by recursion along the patch tree.
inline Result report_generatrissa(const Instance& inst, const Options& o,
                                  const std::optional<GeneratrissaQuery>& query = std::nullopt) {
  const Certificate c = certify_instance(inst, o);
  if (!c.D || !c.positive_definite)
    return {{{"pass", false}, {"failures", {"no positive definite form recovered: " + c.failed_condition}}}, kFail};
  const Parallelotope S = apply_scaling(as_parallelotope(inst), *c.canonical.scaling);
  const std::size_t radius = detail::radius_or(o, 2);
  const Patch patch = build_patch(S, radius);
  const VertexSet vs = enumerate_vertices(S);
  const GeneratrissaReport g =
      verify_generatrissa(S, *c.D, vs, patch, interior_samples(vs, S.dim, o.samples, o.seed), o.seed);
  const PathIndependenceReport pi = check_generatrissa_paths(S, *c.D, patch, 50, o.seed, 6);
  const bool ok = g.pass && pi.agree == pi.paths && !pi.disagreeing_pair;
  json j = {{"checks", to_json(g)}, {"paths", to_json(pi)}, {"D", to_json(c.D->matrix())},
            {"seed", o.seed}, {"radius", radius}, {"pass", ok}, {"query", nullptr}};
  if (query) {
    if (query->x.size() != S.dim || query->t.size() != S.dim) throw InvalidInput("--x and --t need dimension " + std::to_string(S.dim));
    const auto idx = patch.find(query->t);
    if (!idx) throw InvalidInput("t is outside the radius-" + std::to_string(radius) + " patch");
    const auto tp = tree_path(S, patch, *idx);
    const Rat closed = generatrissa_eval(Generatrissa{*c.D}, query->x, query->t);
    const Rat rec = generatrissa_recursive_eval(S, tp, query->x);
    j["query"] = {{"x", to_json(query->x)}, {"t", to_json(query->t)}, {"value", to_json(closed)},
                  {"recursive_value", to_json(rec)}, {"path", encode_steps(tp)}};
  }
  return {j, ok ? kPass : kFail};
}

inline Result cmd_report(const std::string& which, const std::string& path, const Options& o = {}) {
  const Instance inst = read_instance(path);
  if (which == "venkov") return report_venkov(inst);
  if (which == "belts") return report_belts(inst);
  if (which == "patch") return report_patch(inst, o);
  if (which == "identities") return report_identities(inst, o);
  if (which == "primitivity") return report_primitivity(inst, o);
  if (which == "delaunay") return report_delaunay(inst, o);
  if (which == "pegs") return report_pegs(inst, o);
  if (which == "generatrissa") return report_generatrissa(inst, o);
  throw InvalidInput("unknown report " + which);
}

/// Stable text form: two-space indent and a trailing newline.
inline std::string render(const json& j) { return j.dump(2) + "\n"; }

}  // namespace vcert::cli
