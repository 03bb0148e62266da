#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <utility>
#include <string>
#include <vector>

#include "vcert/belts.hpp"
#include "vcert/errors.hpp"
#include "vcert/linalg.hpp"
#include "vcert/parallelotope.hpp"
#include "vcert/vertices.hpp"

namespace vcert {

// ---------------------------------------------------------------------------
// Patches of the lattice graph: t ~ t' iff t - t' is some +-t_i.
// ---------------------------------------------------------------------------

struct PatchEdge {
  std::size_t from;
  std::size_t to;  ///< centers[to] = centers[from] + t_pair
  std::size_t pair;
};

struct Patch {
  std::size_t radius = 0;
  std::vector<IntVector> centers;  ///< BFS order, centers[0] = 0
  std::vector<std::size_t> depth;  ///< graph distance from 0
  std::vector<std::size_t> parent; ///< BFS tree parent (parent[0] = 0)
  std::vector<PatchEdge> edges;
  /// neighbour[c][2i] / neighbour[c][2i+1]: index of c + t_i / c - t_i, or npos.
  std::vector<std::vector<std::size_t>> neighbour;
  std::map<IntVector, std::size_t> index;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t size() const { return centers.size(); }
  std::optional<std::size_t> find(const IntVector& t) const {
    auto it = index.find(t);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

inline Patch build_patch(const Parallelotope& P, std::size_t radius) {
  Patch patch;
  patch.radius = radius;
  const IntVector zero(P.dim, 0);
  patch.centers.push_back(zero);
  patch.depth.push_back(0);
  patch.parent.push_back(0);
  patch.index.emplace(zero, 0);
  for (std::size_t head = 0; head < patch.centers.size(); ++head) {
    if (patch.depth[head] == radius) continue;
    for (const auto& p : P.pairs)
      for (int s : {1, -1}) {
        IntVector next = patch.centers[head] + s * p.t;
        if (patch.index.count(next)) continue;
        patch.index.emplace(next, patch.centers.size());
        patch.centers.push_back(std::move(next));
        patch.depth.push_back(patch.depth[head] + 1);
        patch.parent.push_back(head);
      }
  }
  patch.neighbour.assign(patch.size(), std::vector<std::size_t>(2 * P.size(), Patch::npos));
  for (std::size_t c = 0; c < patch.size(); ++c)
    for (std::size_t i = 0; i < P.size(); ++i) {
      if (auto up = patch.find(patch.centers[c] + P.pairs[i].t)) {
        patch.neighbour[c][2 * i] = *up;
        patch.edges.push_back({c, *up, i});
      }
      if (auto down = patch.find(patch.centers[c] - P.pairs[i].t)) patch.neighbour[c][2 * i + 1] = *down;
    }
  return patch;
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

/// One edge sign * t_index of a path.
struct Step {
  std::size_t index;
  int sign;
  friend bool operator==(const Step&, const Step&) = default;
};

struct Path {
  IntVector start;
  std::vector<Step> steps;
};

/// "+2", "-0", ...
inline std::string encode_step(const Step& s) { return (s.sign > 0 ? "+" : "-") + std::to_string(s.index); }

inline std::vector<std::string> encode_steps(std::span<const Step> steps) {
  std::vector<std::string> out;
  for (const auto& s : steps) out.push_back(encode_step(s));
  return out;
}

inline IntVector step_vector(const Parallelotope& P, const Step& s) { return s.sign * P.pairs[s.index].t; }

inline IntVector path_end(const Parallelotope& P, const IntVector& start, std::span<const Step> steps) {
  IntVector t = start;
  for (const auto& s : steps) t = t + step_vector(P, s);
  return t;
}

/// -P: the same edges walked backwards from the end point.
inline std::vector<Step> reversed(std::span<const Step> steps) {
  std::vector<Step> r;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) r.push_back({it->index, -it->sign});
  return r;
}

inline std::vector<Step> concat(std::span<const Step> a, std::span<const Step> b) {
  std::vector<Step> r(a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline std::vector<Step> quadrangle(std::size_t i, std::size_t j) { return {{i, 1}, {j, 1}, {i, -1}, {j, -1}}; }

struct PathSums {
  IntVector t;
  RatVector q;
};

/// t(P) = sum of the signed t_k and its associated q(P).
inline PathSums path_sums(const Parallelotope& P, std::span<const Step> steps) {
  PathSums s{IntVector(P.dim, 0), RatVector(P.dim)};
  for (const auto& st : steps) {
    s.t = s.t + step_vector(P, st);
    s.q = s.q + Rat(st.sign) * P.pairs[st.index].q;
  }
  return s;
}

/// phi(t0, P) = sum_k q_k^T (t0 + t_1 + ... + t_{k-1} + t_k / 2) with signed
/// q_k, t_k along the path.
inline Rat phi(const Parallelotope& P, const IntVector& t0, std::span<const Step> steps) {
  Rat total = 0;
  RatVector at = to_rat(t0);
  for (const auto& s : steps) {
    const RatVector qk = Rat(s.sign) * P.pairs[s.index].q;
    const RatVector tk = to_rat(step_vector(P, s));
    total += dot(qk, at + Rat(1, 2) * tk);
    at = at + tk;
  }
  return total;
}

inline Rat phi(const Parallelotope& P, const Path& path) { return phi(P, path.start, path.steps); }

/// Closed form q(P)^T (t0 + t(P)/2), valid when q_i^T t_j = q_j^T t_i on
/// the path's support.
inline Rat phi_closed(const Parallelotope& P, const IntVector& t0, std::span<const Step> steps) {
  const PathSums s = path_sums(P, steps);
  return dot(s.q, to_rat(t0) + Rat(1, 2) * to_rat(s.t));
}

// ---------------------------------------------------------------------------
// Exact scaled-integer evaluation for bulk path enumeration.
// ---------------------------------------------------------------------------

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in scaled path arithmetic");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in scaled path arithmetic");
  return r;
}

}  // namespace detail

/// With L the lcm of the denominators of all q entries, holds Q_i = L q_i as
/// integer vectors so that 2 L phi is an exact int64.
class ScaledPathAlgebra {
 public:
  explicit ScaledPathAlgebra(const Parallelotope& P) : P_(&P) {
    mpz_class lcm = 1;
    for (const auto& p : P.pairs)
      for (const auto& x : p.q) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
    if (!lcm.fits_slong_p()) throw Error("facet vector denominators too large for scaled arithmetic");
    scale_ = lcm.get_si();
    for (const auto& p : P.pairs) {
      IntVector qi;
      for (const auto& x : p.q) {
        const mpz_class v = x.get_num() * (lcm / x.get_den());
        if (!v.fits_slong_p()) throw Error("facet vector too large for scaled arithmetic");
        qi.push_back(v.get_si());
      }
      q_.push_back(std::move(qi));
    }
  }

  std::int64_t scale() const { return scale_; }
  const IntVector& q(std::size_t i) const { return q_[i]; }

  std::int64_t dot_q(std::size_t i, const IntVector& v) const {
    std::int64_t s = 0;
    for (std::size_t c = 0; c < v.size(); ++c) s = detail::checked_add(s, detail::checked_mul(q_[i][c], v[c]));
    return s;
  }

  /// 2 L phi(t0, steps).
  std::int64_t phi2(const IntVector& t0, std::span<const Step> steps) const {
    std::int64_t total = 0;
    IntVector at = t0;
    for (const auto& s : steps) {
      const IntVector& t = P_->pairs[s.index].t;
      IntVector arg(at.size());
      for (std::size_t c = 0; c < at.size(); ++c) arg[c] = 2 * at[c] + s.sign * t[c];
      total = detail::checked_add(total, s.sign * dot_q(s.index, arg));
      for (std::size_t c = 0; c < at.size(); ++c) at[c] += s.sign * t[c];
    }
    return total;
  }

  /// 2 L q(P)^T (t0 + t(P)/2).
  std::int64_t phi2_closed(const IntVector& t0, std::span<const Step> steps) const {
    IntVector qsum(t0.size(), 0), tsum(t0.size(), 0);
    for (const auto& s : steps)
      for (std::size_t c = 0; c < t0.size(); ++c) {
        qsum[c] = detail::checked_add(qsum[c], s.sign * q_[s.index][c]);
        tsum[c] += s.sign * P_->pairs[s.index].t[c];
      }
    std::int64_t r = 0;
    for (std::size_t c = 0; c < t0.size(); ++c)
      r = detail::checked_add(r, detail::checked_mul(qsum[c], 2 * t0[c] + tsum[c]));
    return r;
  }

  /// L q(P).
  IntVector q_sum(std::span<const Step> steps) const {
    IntVector s(P_->dim, 0);
    for (const auto& st : steps)
      for (std::size_t c = 0; c < s.size(); ++c) s[c] = detail::checked_add(s[c], st.sign * q_[st.index][c]);
    return s;
  }

 private:
  const Parallelotope* P_;
  std::int64_t scale_ = 1;
  std::vector<IntVector> q_;
};

/// Depth-first walk enumeration from patch center `origin`, staying inside
/// the patch. `visit(steps, positions)` is called for every walk of length
/// 1..max_len; positions[k] is the center index after k steps.
template <class F>
void for_each_walk(const Patch& patch, std::size_t origin, std::size_t max_len, F&& visit) {
  std::vector<Step> steps;
  std::vector<std::size_t> positions{origin};
  const std::size_t nsteps = patch.neighbour.empty() ? 0 : patch.neighbour[0].size();
  auto rec = [&](auto&& self) -> void {
    if (steps.size() == max_len) return;
    const std::size_t here = positions.back();
    for (std::size_t a = 0; a < nsteps; ++a) {
      const std::size_t next = patch.neighbour[here][a];
      if (next == Patch::npos) continue;
      steps.push_back({a / 2, a % 2 == 0 ? 1 : -1});
      positions.push_back(next);
      visit(std::as_const(steps), std::as_const(positions));
      self(self);
      steps.pop_back();
      positions.pop_back();
    }
  };
  rec(rec);
}

/// BFS-tree path from 0 to patch center c.
inline std::vector<Step> tree_path(const Parallelotope& P, const Patch& patch, std::size_t c) {
  std::vector<Step> rev;
  while (c != 0) {
    const std::size_t p = patch.parent[c];
    const IntVector d = patch.centers[c] - patch.centers[p];
    for (std::size_t i = 0; i < P.size(); ++i) {
      if (P.pairs[i].t == d) {
        rev.push_back({i, 1});
        break;
      }
      if (P.pairs[i].t == -d) {
        rev.push_back({i, -1});
        break;
      }
    }
    c = p;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

// ---------------------------------------------------------------------------
// phi identities
// ---------------------------------------------------------------------------

struct IdentityCheck {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::optional<Path> witness;

  void record(bool ok, const IntVector& start, std::span<const Step> steps) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) witness = Path{start, {steps.begin(), steps.end()}};
  }
};

struct PhiIdentityReport {
  std::vector<IdentityCheck> checks;
  std::size_t walks = 0;
  std::size_t nonzero_quadrangles = 0;  ///< (t0, i, j) with phi(t0, Q_ij) != 0
  bool pass = false;
};

/// Verifies over every walk of length <= max_len from 0 inside the patch:
/// additivity at every split, reversal, the circuit-sum rule, the closed
/// form on symmetric support, and over every patch center t0 and pair (i,j)
/// the quadrangle value q_j^T t_i - q_i^T t_j and its zero biconditional.
inline PhiIdentityReport check_phi_identities(const Parallelotope& P, const Patch& patch, std::size_t max_len = 6) {
  const ScaledPathAlgebra alg(P);
  const std::size_t m = P.size();
  std::vector<std::vector<bool>> sym(m, std::vector<bool>(m));
  std::vector<std::vector<Rat>> table(m, std::vector<Rat>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i][j] = dot(P.pairs[i].q, P.pairs[j].t);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) sym[i][j] = table[i][j] == table[j][i];

  IdentityCheck additivity, reversal, circuit_sum, closed, val, qij;
  additivity.name = "additivity";
  reversal.name = "reversal";
  circuit_sum.name = "circuit_sum";
  closed.name = "closed_form";
  val.name = "quadrangle_value";
  qij.name = "quadrangle_biconditional";
  const IntVector zero(P.dim, 0);
  std::vector<std::vector<Step>> back_to_zero(patch.size());
  for (std::size_t c = 0; c < patch.size(); ++c) back_to_zero[c] = reversed(tree_path(P, patch, c));

  PhiIdentityReport report;
  for_each_walk(patch, 0, max_len, [&](const std::vector<Step>& steps, const std::vector<std::size_t>& pos) {
    ++report.walks;
    const std::size_t s = steps.size();
    const std::span<const Step> all(steps);
    const std::int64_t whole = alg.phi2(zero, all);

    for (std::size_t k = 1; k < s; ++k) {
      const std::int64_t lhs = alg.phi2(zero, all.first(k));
      const std::int64_t rhs = alg.phi2(patch.centers[pos[k]], all.subspan(k));
      additivity.record(whole == lhs + rhs, zero, all);
    }
    const auto back = reversed(all);
    reversal.record(alg.phi2(patch.centers[pos[s]], back) == -whole, zero, all);

    bool support_symmetric = true;
    for (std::size_t a = 0; a < s && support_symmetric; ++a)
      for (std::size_t b = 0; b < s; ++b)
        if (!sym[steps[a].index][steps[b].index]) {
          support_symmetric = false;
          break;
        }
    if (support_symmetric) closed.record(whole == alg.phi2_closed(zero, all), zero, all);

    if (pos[s] == 0) {
      // C1 = P1 + P', C2 = -P' + P2 with P' the tree path from t1 back to 0.
      for (std::size_t k = 1; k < s; ++k) {
        const auto& p_back = back_to_zero[pos[k]];
        const auto c1 = concat(all.first(k), p_back);
        const auto c2 = concat(reversed(p_back), all.subspan(k));
        circuit_sum.record(whole == alg.phi2(zero, c1) + alg.phi2(zero, c2), zero, all);
      }
    }
  });

  for (std::size_t c = 0; c < patch.size(); ++c)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const auto quad = quadrangle(i, j);
        const Rat value = phi(P, patch.centers[c], quad);
        if (value != 0) ++report.nonzero_quadrangles;
        val.record(value == table[j][i] - table[i][j], patch.centers[c], quad);
        qij.record((value == 0) == sym[i][j], patch.centers[c], quad);
      }

  report.checks = {additivity, reversal, circuit_sum, closed, val, qij};
  report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.failed == 0; });
  return report;
}

// ---------------------------------------------------------------------------
// Circuits: q(C) = 0
// ---------------------------------------------------------------------------

struct CircuitReport {
  bool pass = true;
  std::size_t triangles = 0;
  std::size_t circuits = 0;
  std::optional<Path> witness;
};

/// Belt triangles (eps_j t_j, eps_k t_k, -t_i) first, then every closed
/// walk of length <= max_len through 0 in the patch.
inline CircuitReport circuit_q_check(const Parallelotope& P, const std::vector<Belt>& belts, const Patch& patch,
                                     std::size_t max_len = 6) {
  CircuitReport r;
  const IntVector zero(P.dim, 0);
  for (const auto& b : belts) {
    if (b.kind != BeltKind::Three) continue;
    const std::vector<Step> tri{{b.indices[1], b.eps[0]}, {b.indices[2], b.eps[1]}, {b.indices[0], -1}};
    ++r.triangles;
    if (!is_zero(path_sums(P, tri).q) && r.pass) {
      r.pass = false;
      r.witness = Path{zero, tri};
    }
  }
  const ScaledPathAlgebra alg(P);
  for_each_walk(patch, 0, max_len, [&](const std::vector<Step>& steps, const std::vector<std::size_t>& pos) {
    if (pos.back() != 0) return;
    ++r.circuits;
    if (r.pass && !is_zero(alg.q_sum(steps))) {
      r.pass = false;
      r.witness = Path{zero, steps};
    }
  });
  return r;
}

// ---------------------------------------------------------------------------
// Generatrissa l(x; t) = t^T D (x - t/2)
// ---------------------------------------------------------------------------

struct Generatrissa {
  QuadraticForm D;
};

/// x -> coeff^T x + constant.
struct AffineFunction {
  RatVector coeff;
  Rat constant;

  Rat operator()(const RatVector& x) const { return dot(coeff, x) + constant; }
  friend bool operator==(const AffineFunction&, const AffineFunction&) = default;
};

inline Rat generatrissa_eval(const Generatrissa& g, const RatVector& x, const IntVector& t) {
  const RatVector tr = to_rat(t);
  return dot(tr, g.D.matrix() * (x - Rat(1, 2) * tr));
}

inline AffineFunction generatrissa_closed(const Generatrissa& g, const IntVector& t) {
  const RatVector Dt = g.D.matrix() * t;
  return {Dt, -dot(Dt, to_rat(t)) / 2};
}

/// l(.; t) obtained from l(x; 0) = 0 by the facet recursion
///   l(x; t + s) = l(x; t) + q_s^T (x - (t + s/2))
/// along `steps` starting at 0.
inline AffineFunction generatrissa_recursive(const Parallelotope& P, std::span<const Step> steps) {
  AffineFunction f{RatVector(P.dim), Rat(0)};
  RatVector at(P.dim);
  for (const auto& s : steps) {
    const RatVector qs = Rat(s.sign) * P.pairs[s.index].q;
    const RatVector ts = to_rat(step_vector(P, s));
    f.coeff = f.coeff + qs;
    f.constant -= dot(qs, at + Rat(1, 2) * ts);
    at = at + ts;
  }
  return f;
}

inline Rat generatrissa_recursive_eval(const Parallelotope& P, std::span<const Step> steps, const RatVector& x) {
  return generatrissa_recursive(P, steps)(x);
}

/// Deterministic pseudo-random source; raw engine output only so that
/// results do not depend on the standard library's distributions.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

/// Strict interior points: sum_r (c_r / den) v_r with den in [2, 7] and the
/// centroid (the origin) keeping weight >= 1/den.
inline std::vector<RatVector> interior_samples(const VertexSet& vs, std::size_t dim, std::size_t count,
                                               std::uint64_t seed) {
  SampleRng rng(seed);
  std::vector<RatVector> out;
  const std::size_t nv = vs.vertices.size();
  for (std::size_t s = 0; s < count; ++s) {
    const long den = 2 + static_cast<long>(rng.below(6));
    long budget = den - 1 - static_cast<long>(rng.below(static_cast<std::uint64_t>(den - 1)));
    RatVector x(dim);
    const std::size_t picks = 1 + rng.below(std::min<std::size_t>(dim + 1, nv));
    for (std::size_t k = 0; k < picks && budget > 0; ++k) {
      const long w = k + 1 == picks ? budget : static_cast<long>(rng.below(static_cast<std::uint64_t>(budget + 1)));
      budget -= w;
      x = x + make_rat(w, den) * vs.vertices[rng.below(nv)].point;
    }
    for (auto& c : x) c.canonicalize();
    out.push_back(std::move(x));
  }
  return out;
}

/// Convex combinations of the vertices of facet F_i (halfspace 2i).
inline std::vector<RatVector> facet_samples(const VertexSet& vs, std::size_t halfspace, std::size_t count,
                                            std::uint64_t seed) {
  SampleRng rng(seed);
  const auto on = vs.on(halfspace);
  std::vector<RatVector> out;
  if (on.empty()) return out;
  const std::size_t dim = vs.vertices[on.front()].point.size();
  for (std::size_t s = 0; s < count; ++s) {
    const long den = 1 + static_cast<long>(rng.below(7));
    long budget = den;
    RatVector x(dim);
    for (std::size_t k = 0; budget > 0; ++k) {
      const long w = k + 1 >= on.size() ? budget : static_cast<long>(rng.below(static_cast<std::uint64_t>(budget + 1)));
      budget -= w;
      x = x + make_rat(w, den) * vs.vertices[on[k % on.size()]].point;
    }
    for (auto& c : x) c.canonicalize();
    out.push_back(std::move(x));
  }
  return out;
}

struct GeneratrissaReport {
  bool pass = true;
  std::size_t interior_checks = 0;
  std::size_t boundary_checks = 0;
  std::size_t recursion_checks = 0;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    pass = false;
    if (failures.size() < 10) failures.push_back(std::move(msg));
  }
};

/// For sampled x in int P(0): l(x; 0) = 0 and l(x; t) < 0 for every patch
/// center t != 0. On facets: l(t_i/2; t_i) = 0 and l(x; t_i) = 0 for sampled
/// x on F_i. The recursion along the BFS tree path to every center must
/// reproduce the closed form exactly.
inline GeneratrissaReport verify_generatrissa(const Parallelotope& P, const QuadraticForm& D, const VertexSet& vs,
                                              const Patch& patch, const std::vector<RatVector>& samples,
                                              std::uint64_t seed = 0) {
  const Generatrissa g{D};
  GeneratrissaReport r;
  for (const auto& x : samples) {
    ++r.interior_checks;
    if (!contains_interior(P, IntVector(P.dim, 0), x)) r.fail("sample is not interior");
    if (generatrissa_eval(g, x, patch.centers[0]) != 0) r.fail("l(x;0) != 0");
    for (std::size_t c = 1; c < patch.size(); ++c) {
      ++r.interior_checks;
      if (generatrissa_eval(g, x, patch.centers[c]) >= 0) r.fail("l(x;t) >= 0 at an interior sample");
    }
  }
  for (std::size_t i = 0; i < P.size(); ++i) {
    const RatVector center = Rat(1, 2) * to_rat(P.pairs[i].t);
    ++r.boundary_checks;
    if (generatrissa_eval(g, center, P.pairs[i].t) != 0) r.fail("l(t_i/2; t_i) != 0 for pair " + std::to_string(i));
    for (const auto& x : facet_samples(vs, 2 * i, 4, seed + i)) {
      ++r.boundary_checks;
      if (generatrissa_eval(g, x, P.pairs[i].t) != 0) r.fail("l(x; t_i) != 0 on facet " + std::to_string(i));
    }
  }
  for (std::size_t c = 0; c < patch.size(); ++c) {
    ++r.recursion_checks;
    if (generatrissa_recursive(P, tree_path(P, patch, c)) != generatrissa_closed(g, patch.centers[c]))
      r.fail("recursion disagrees with closed form at a patch center");
  }
  return r;
}

/// A random walk inside the patch from 0 of length 1..max_len.
inline std::vector<Step> random_patch_walk(const Patch& patch, SampleRng& rng, std::size_t max_len) {
  std::vector<Step> steps;
  std::size_t here = 0;
  const std::size_t len = 1 + rng.below(max_len);
  const std::size_t nsteps = patch.neighbour[0].size();
  while (steps.size() < len) {
    const std::size_t a = rng.below(nsteps);
    const std::size_t next = patch.neighbour[here][a];
    if (next == Patch::npos) continue;
    steps.push_back({a / 2, a % 2 == 0 ? 1 : -1});
    here = next;
  }
  return steps;
}

struct PathIndependenceReport {
  std::size_t paths = 0;
  std::size_t agree = 0;                                   ///< recursion == closed form
  std::optional<std::pair<Path, Path>> disagreeing_pair;   ///< two paths to one center, different results
};

/// Recursion along `count` random walks compared with the closed form, and
/// every pair of walks ending at the same center compared with each other.
inline PathIndependenceReport check_generatrissa_paths(const Parallelotope& P, const QuadraticForm& D,
                                                       const Patch& patch, std::size_t count, std::uint64_t seed,
                                                       std::size_t max_len = 6) {
  SampleRng rng(seed);
  const Generatrissa g{D};
  PathIndependenceReport r;
  std::map<IntVector, std::pair<std::vector<Step>, AffineFunction>> first;
  const IntVector zero(P.dim, 0);
  auto consider = [&](const std::vector<Step>& steps) {
    const IntVector end = path_end(P, zero, steps);
    const AffineFunction rec = generatrissa_recursive(P, steps);
    ++r.paths;
    if (rec == generatrissa_closed(g, end)) ++r.agree;
    auto [it, fresh] = first.try_emplace(end, steps, rec);
    if (!fresh && !r.disagreeing_pair && !(it->second.second == rec))
      r.disagreeing_pair = std::pair{Path{zero, it->second.first}, Path{zero, steps}};
  };
  for (std::size_t c = 0; c < patch.size(); ++c) {
    const auto tp = tree_path(P, patch, c);
    const IntVector end = path_end(P, zero, tp);
    first.try_emplace(end, tp, generatrissa_recursive(P, tp));
  }
  for (std::size_t k = 0; k < count; ++k) consider(random_patch_walk(patch, rng, max_len));
  return r;
}

// ---------------------------------------------------------------------------
// Pegs v*(t) = D t
// ---------------------------------------------------------------------------

struct PegReport {
  bool pass = true;
  std::size_t edges = 0;
  std::vector<std::optional<Rat>> multipliers;  ///< per pair: D t_i = lambda q_i
  std::optional<PatchEdge> witness;
};

/// Positive lambda with a = lambda b, if any.
inline std::optional<Rat> positive_multiple(const RatVector& a, const RatVector& b) {
  std::optional<Rat> lambda;
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (b[c] == 0) {
      if (a[c] != 0) return std::nullopt;
      continue;
    }
    const Rat l = a[c] / b[c];
    if (lambda && *lambda != l) return std::nullopt;
    lambda = l;
  }
  if (!lambda || *lambda <= 0) return std::nullopt;
  return lambda;
}

/// For every patch edge (t, t + t_i): v*(t + t_i) - v*(t) is a positive
/// multiple of q_i, the outer normal of P(t) at the shared facet.
inline PegReport verify_pegs(const Parallelotope& P, const QuadraticForm& D, const Patch& patch) {
  PegReport r;
  r.multipliers.assign(P.size(), std::nullopt);
  std::vector<bool> seen(P.size(), false);
  for (const auto& e : patch.edges) {
    ++r.edges;
    const RatVector diff = D.matrix() * patch.centers[e.to] - D.matrix() * patch.centers[e.from];
    const auto lambda = positive_multiple(diff, P.pairs[e.pair].q);
    bool ok = lambda.has_value();
    if (ok && seen[e.pair] && r.multipliers[e.pair] != lambda) ok = false;
    if (ok && !seen[e.pair]) {
      seen[e.pair] = true;
      r.multipliers[e.pair] = lambda;
    }
    if (!ok && r.pass) {
      r.pass = false;
      r.witness = e;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Primitivity
// ---------------------------------------------------------------------------

/// Number of patch tiles P(t) (closed) containing every point of `face`.
inline std::size_t face_tile_count(const Parallelotope& P, const Patch& patch, const std::vector<RatVector>& face) {
  std::size_t count = 0;
  for (const auto& t : patch.centers)
    if (std::all_of(face.begin(), face.end(), [&](const RatVector& x) { return contains(P, t, x); })) ++count;
  return count;
}

struct PrimitivityLevel {
  std::size_t k = 0;                 ///< face dimension
  std::size_t expected = 0;          ///< n - k + 1
  std::vector<std::size_t> counts;   ///< tile count per face
  bool primitive = false;
};

struct PrimitivityReport {
  std::vector<PrimitivityLevel> levels;  ///< k = 0, n-2, n-1 (deduplicated)
};

inline PrimitivityReport primitivity_report(const Parallelotope& P, const VertexSet& vs, const Patch& patch) {
  const std::size_t n = P.dim;
  PrimitivityReport rep;
  auto level = [&](std::size_t k, const std::vector<std::vector<RatVector>>& faces) {
    PrimitivityLevel l{k, n - k + 1, {}, true};
    for (const auto& f : faces) {
      l.counts.push_back(face_tile_count(P, patch, f));
      if (l.counts.back() != l.expected) l.primitive = false;
    }
    rep.levels.push_back(std::move(l));
  };
  std::vector<std::vector<RatVector>> verts;
  for (const auto& v : vs.vertices) verts.push_back({v.point});
  level(0, verts);
  if (n >= 3) {
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<RatVector>> faces;
    for (const auto& r : ridges(P, vs)) {
      if (!seen.insert(r.vertices).second) continue;
      std::vector<RatVector> f;
      for (auto v : r.vertices) f.push_back(vs.vertices[v].point);
      faces.push_back(std::move(f));
    }
    level(n - 2, faces);
  }
  if (n >= 2) {
    std::vector<std::vector<RatVector>> facets;
    for (std::size_t h = 0; h < vs.halfspace_count; ++h) {
      std::vector<RatVector> f;
      for (auto v : vs.on(h)) f.push_back(vs.vertices[v].point);
      facets.push_back(std::move(f));
    }
    level(n - 1, facets);
  }
  return rep;
}

}  // namespace vcert
