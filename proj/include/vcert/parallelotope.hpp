#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vcert/errors.hpp"
#include "vcert/linalg.hpp"

namespace vcert {

/// One pair of opposite facets: facet vector q (outward normal of F_i) and
/// the lattice vector t carrying P(0) onto its neighbour across F_i.
struct FacetPair {
  RatVector q;
  IntVector t;

  /// alpha_i = q^T t / 2, the offset of facet F_i.
  Rat offset() const { return dot(q, t) / 2; }
};

/// A candidate parallelotope P(0) = { x : |q_i^T x| <= q_i^T t_i / 2 }.
/// Indices of facet pairs are positions in `pairs`.
struct Parallelotope {
  std::size_t dim = 0;
  std::vector<FacetPair> pairs;

  std::size_t size() const { return pairs.size(); }
};

struct Halfspace {
  RatVector normal;
  Rat offset;  ///< normal^T x <= offset
};

/// Plain H-representation. For a parallelotope, halfspace 2i is facet F_i
/// and halfspace 2i+1 is the opposite facet -F_i.
struct HalfspaceSystem {
  std::size_t dim = 0;
  std::vector<Halfspace> halfspaces;
};

/// Throws InvalidInput unless P satisfies the data-model invariants:
/// consistent dimensions, q != 0, t != 0, q^T t > 0, the t_i span R^n, the
/// q_i span R^n (boundedness), and no two t_i equal up to sign.
inline void validate(const Parallelotope& P) {
  if (P.dim == 0) throw InvalidInput("dimension must be positive");
  if (P.pairs.empty()) throw InvalidInput("no facet pairs");
  std::vector<RatVector> qs, ts;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto& p = P.pairs[i];
    const std::string where = "pair " + std::to_string(i) + ": ";
    if (p.q.size() != P.dim || p.t.size() != P.dim) throw InvalidInput(where + "vector length differs from dim");
    if (is_zero(p.q)) throw InvalidInput(where + "zero facet vector");
    if (is_zero(p.t)) throw InvalidInput(where + "zero lattice vector");
    if (dot(p.q, p.t) <= 0) throw InvalidInput(where + "q^T t must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (P.pairs[j].t == p.t || P.pairs[j].t == -p.t)
        throw InvalidInput(where + "lattice vector repeats pair " + std::to_string(j) + " up to sign");
    qs.push_back(p.q);
    ts.push_back(to_rat(p.t));
  }
  if (rank(ts) != P.dim) throw InvalidInput("lattice vectors do not span the space");
  if (rank(qs) != P.dim) throw UnboundedInput("facet vectors do not span the space; the body is unbounded");
}

/// The 2m halfspaces of P(t): +-q_i^T x <= q_i^T t_i / 2 +- q_i^T t.
inline HalfspaceSystem hrep(const Parallelotope& P, const IntVector& center) {
  HalfspaceSystem h{P.dim, {}};
  h.halfspaces.reserve(2 * P.size());
  for (const auto& p : P.pairs) {
    const Rat alpha = p.offset();
    const Rat shift = dot(p.q, center);
    h.halfspaces.push_back({p.q, alpha + shift});
    h.halfspaces.push_back({-p.q, alpha - shift});
  }
  return h;
}

inline HalfspaceSystem hrep(const Parallelotope& P) { return hrep(P, IntVector(P.dim, 0)); }

/// Closed membership x in P(t).
inline bool contains(const Parallelotope& P, const IntVector& center, const RatVector& x) {
  for (const auto& p : P.pairs) {
    const Rat v = dot(p.q, x) - dot(p.q, center);
    const Rat a = p.offset();
    if (v > a || v < -a) return false;
  }
  return true;
}

/// Strict interior membership x in int P(t).
inline bool contains_interior(const Parallelotope& P, const IntVector& center, const RatVector& x) {
  for (const auto& p : P.pairs) {
    const Rat v = dot(p.q, x) - dot(p.q, center);
    const Rat a = p.offset();
    if (v >= a || v <= -a) return false;
  }
  return true;
}

}  // namespace vcert
