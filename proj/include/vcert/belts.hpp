#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "vcert/errors.hpp"
#include "vcert/linalg.hpp"
#include "vcert/parallelotope.hpp"
#include "vcert/vertices.hpp"

namespace vcert {

enum class BeltKind { Two = 2, Three = 3 };

/// The facet pairs parallel to one ridge direction. For a 3-belt {i,j,k}
/// (i the lowest index) the lattice vectors satisfy
///   t_i - eps_j t_j - eps_k t_k = 0.
struct Belt {
  BeltKind kind = BeltKind::Two;
  std::vector<std::size_t> indices;  ///< ascending pair indices
  std::array<int, 2> eps{1, 1};      ///< meaningful for 3-belts only

  std::size_t facet_count() const { return 2 * indices.size(); }
  friend bool operator==(const Belt&, const Belt&) = default;
};

/// Signs (eps_j, eps_k) with t_i = eps_j t_j + eps_k t_k. The 2x2 system
/// is solved on the first pair of coordinates where t_j, t_k are
/// independent and the full relation is verified afterwards.
inline std::array<int, 2> belt_signs(const IntVector& ti, const IntVector& tj, const IntVector& tk) {
  const std::size_t n = ti.size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = r + 1; s < n; ++s) {
      const std::int64_t det = tj[r] * tk[s] - tk[r] * tj[s];
      if (det == 0) continue;
      const Rat a = make_rat(ti[r] * tk[s] - tk[r] * ti[s], det);
      const Rat b = make_rat(tj[r] * ti[s] - ti[r] * tj[s], det);
      if (abs(a) != 1 || abs(b) != 1) throw NoIntegerRelation("3-belt lattice vectors admit no +-1 relation");
      const int ej = a > 0 ? 1 : -1;
      const int ek = b > 0 ? 1 : -1;
      if (ti != ej * tj + ek * tk) throw NoIntegerRelation("3-belt lattice vectors admit no +-1 relation");
      return {ej, ek};
    }
  throw NoIntegerRelation("3-belt lattice vectors t_j, t_k are dependent");
}

/// Pairs j whose facet vector q_j is orthogonal to every ridge direction.
inline std::vector<std::size_t> belt_members(const Parallelotope& P, const Ridge& ridge) {
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < P.size(); ++j) {
    const bool orth = std::all_of(ridge.directions.begin(), ridge.directions.end(),
                                  [&](const RatVector& d) { return dot(P.pairs[j].q, d) == 0; });
    if (orth) members.push_back(j);
  }
  return members;
}

inline Belt belt_of(const Parallelotope& P, const Ridge& ridge) {
  const auto members = belt_members(P, ridge);
  if (members.size() == 2) return {BeltKind::Two, members, {1, 1}};
  if (members.size() != 3)
    throw BeltSizeViolation("belt contains " + std::to_string(2 * members.size()) + " facets");
  const auto& [i, j, k] = std::array{members[0], members[1], members[2]};
  std::vector<RatVector> qs{P.pairs[i].q, P.pairs[j].q, P.pairs[k].q};
  if (rank(qs) != 2) throw InputNotParallelotope("3-belt facet vectors do not span a 2-plane");
  return {BeltKind::Three, members, belt_signs(P.pairs[i].t, P.pairs[j].t, P.pairs[k].t)};
}

struct BeltSize {
  std::vector<std::size_t> indices;  ///< pair indices (or halfspaces, for raw input)
  std::size_t facets = 0;
};

struct VenkovReport {
  bool central_symmetry = false;
  std::vector<bool> facet_symmetry;  ///< per halfspace
  std::vector<BeltSize> belt_sizes;  ///< one entry per distinct belt
  std::vector<Belt> belts;           ///< the well-formed belts, in discovery order
  std::vector<std::string> failures;
  std::size_t vertex_count = 0;
  bool pass = false;
};

namespace detail {

inline void add_belt_size(std::vector<BeltSize>& sizes, std::vector<std::size_t> idx, std::size_t facets) {
  for (const auto& b : sizes)
    if (b.indices == idx) return;
  sizes.push_back({std::move(idx), facets});
}

inline void finish(VenkovReport& r) {
  if (!r.central_symmetry) r.failures.insert(r.failures.begin(), "(i) not centrally symmetric");
  for (std::size_t h = 0; h < r.facet_symmetry.size(); ++h)
    if (!r.facet_symmetry[h]) r.failures.push_back("(ii) facet " + std::to_string(h) + " not centrally symmetric");
  r.pass = r.failures.empty();
}

}  // namespace detail

/// Conditions (i), (ii), (iii'): central symmetry, centrally symmetric
/// facets (about t_i/2), and every belt of 4 or 6 facets. Belt problems are
/// recorded as failures, never thrown.
inline VenkovReport venkov_check(const Parallelotope& P, const VertexSet& vs) {
  VenkovReport r;
  r.vertex_count = vs.vertices.size();
  r.central_symmetry = check_central_symmetry(vs);
  r.facet_symmetry = check_facet_symmetry(P, vs);
  for (const auto& ridge : ridges(P, vs)) {
    const auto members = belt_members(P, ridge);
    detail::add_belt_size(r.belt_sizes, members, 2 * members.size());
    try {
      Belt b = belt_of(P, ridge);
      if (std::find(r.belts.begin(), r.belts.end(), b) == r.belts.end()) r.belts.push_back(std::move(b));
    } catch (const Error& e) {
      std::string msg = std::string("(iii') ") + e.what();
      if (std::find(r.failures.begin(), r.failures.end(), msg) == r.failures.end()) r.failures.push_back(msg);
    }
  }
  detail::finish(r);
  return r;
}

inline VenkovReport venkov_check(const Parallelotope& P) { return venkov_check(P, enumerate_vertices(P)); }

/// Raw halfspace input: facet centers are vertex centroids and belts are
/// counted in facets whose normals are orthogonal to the ridge.
inline VenkovReport venkov_check(const HalfspaceSystem& h) {
  const VertexSet vs = enumerate_vertices(h);
  VenkovReport r;
  r.vertex_count = vs.vertices.size();
  r.central_symmetry = check_central_symmetry(vs);
  r.facet_symmetry = check_facet_symmetry(vs, h.dim, facet_centroids(vs, h.dim));
  for (const auto& ridge : ridges(vs, h.dim)) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < h.halfspaces.size(); ++k) {
      const bool orth = std::all_of(ridge.directions.begin(), ridge.directions.end(),
                                    [&](const RatVector& d) { return dot(h.halfspaces[k].normal, d) == 0; });
      if (orth) members.push_back(k);
    }
    const std::size_t facets = members.size();
    detail::add_belt_size(r.belt_sizes, members, facets);
    if (facets != 4 && facets != 6) {
      std::string msg = "(iii') belt contains " + std::to_string(facets) + " facets";
      if (std::find(r.failures.begin(), r.failures.end(), msg) == r.failures.end()) r.failures.push_back(msg);
    }
  }
  detail::finish(r);
  return r;
}

/// Distinct belts of a parallelotope, throwing on the first malformed one.
inline std::vector<Belt> belts(const Parallelotope& P, const VertexSet& vs) {
  std::vector<Belt> out;
  for (const auto& ridge : ridges(P, vs)) {
    Belt b = belt_of(P, ridge);
    if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(std::move(b));
  }
  return out;
}

/// Pairs each facet of a centrally symmetric raw polytope with its opposite
/// and reads the lattice vector off the facet center (t = 2 c). Throws
/// InvalidInput when the result is not a parallelotope candidate.
inline Parallelotope to_parallelotope(const HalfspaceSystem& h) {
  const VertexSet vs = enumerate_vertices(h);
  if (!check_central_symmetry(vs)) throw InvalidInput("polytope is not centrally symmetric");
  const auto centers = facet_centroids(vs, h.dim);
  Parallelotope P{h.dim, {}};
  std::vector<bool> used(h.halfspaces.size(), false);
  for (std::size_t a = 0; a < h.halfspaces.size(); ++a) {
    if (used[a]) continue;
    std::size_t b = a + 1;
    while (b < h.halfspaces.size() && (used[b] || centers[b] != -centers[a])) ++b;
    if (b == h.halfspaces.size()) throw InvalidInput("facet " + std::to_string(a) + " has no opposite facet");
    used[a] = used[b] = true;
    IntVector t(h.dim);
    for (std::size_t c = 0; c < h.dim; ++c) {
      const Rat twice = 2 * centers[a][c];
      if (!is_integer(twice) || !twice.get_num().fits_slong_p())
        throw InvalidInput("facet " + std::to_string(a) + " center is not half a lattice vector");
      t[c] = twice.get_num().get_si();
    }
    P.pairs.push_back({h.halfspaces[a].normal, t});
  }
  validate(P);
  return P;
}

}  // namespace vcert
