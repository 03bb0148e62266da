#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vcert/belts.hpp"
#include "vcert/errors.hpp"
#include "vcert/linalg.hpp"
#include "vcert/parallelotope.hpp"
#include "vcert/tiling_patch.hpp"
#include "vcert/vertices.hpp"

namespace vcert {

/// Positive multipliers beta_i making every 3-belt satisfy
///   beta_i q_i - eps_j beta_j q_j - eps_k beta_k q_k = 0.
/// Each connected component of the 3-belt graph is normalized separately so
/// that its lowest index has beta = 1.
struct CanonicalScaling {
  RatVector beta;
  std::size_t kernel_dim = 0;
  std::vector<std::vector<std::size_t>> components;
};

struct CanonicalResult {
  std::optional<CanonicalScaling> scaling;
  std::string failure;  ///< "NoPositiveSolution: ..." when scaling is empty

  explicit operator bool() const { return scaling.has_value(); }
};

namespace detail {

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace detail

/// Throws InputNotParallelotope when a 3-belt's facet vectors do not span
/// exactly a 2-plane.
inline CanonicalResult canonical_scaling(const Parallelotope& P, const std::vector<Belt>& belts) {
  const std::size_t m = P.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<const Belt*> triples;
  for (const auto& b : belts) {
    if (b.kind != BeltKind::Three) continue;
    std::vector<RatVector> qs;
    for (auto i : b.indices) qs.push_back(P.pairs[i].q);
    if (rank(qs) != 2) throw InputNotParallelotope("3-belt facet vectors do not span a 2-plane");
    triples.push_back(&b);
    parent[detail::find_root(parent, b.indices[1])] = detail::find_root(parent, b.indices[0]);
    parent[detail::find_root(parent, b.indices[2])] = detail::find_root(parent, b.indices[0]);
  }

  std::vector<std::vector<std::size_t>> components;
  {
    std::vector<std::size_t> slot(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t r = detail::find_root(parent, i);
      if (slot[r] == m) {
        slot[r] = components.size();
        components.emplace_back();
      }
      components[slot[r]].push_back(i);
    }
  }

  CanonicalScaling s{RatVector(m), 0, components};
  for (const auto& comp : components) {
    if (comp.size() == 1) {
      s.beta[comp[0]] = 1;
      ++s.kernel_dim;
      continue;
    }
    auto col = [&](std::size_t i) { return std::size_t(std::find(comp.begin(), comp.end(), i) - comp.begin()); };
    std::vector<RatVector> rows;
    for (const Belt* b : triples) {
      if (col(b->indices[0]) == comp.size()) continue;
      const auto& [i, j, k] = std::array{b->indices[0], b->indices[1], b->indices[2]};
      for (std::size_t c = 0; c < P.dim; ++c) {
        RatVector row(comp.size());
        row[col(i)] += P.pairs[i].q[c];
        row[col(j)] -= b->eps[0] * P.pairs[j].q[c];
        row[col(k)] -= b->eps[1] * P.pairs[k].q[c];
        rows.push_back(std::move(row));
      }
    }
    const auto ker = nullspace(RatMatrix::from_rows(rows));
    const std::string where = "component starting at index " + std::to_string(comp[0]);
    if (ker.empty()) return {std::nullopt, "NoPositiveSolution: only the zero solution on " + where};
    if (ker.size() > 1)
      throw Inconsistent("belt constraint kernel of dimension " + std::to_string(ker.size()) + " on " + where);
    const RatVector& v = ker[0];
    const int lead = sign(v[0]);
    if (lead == 0 || !std::all_of(v.begin(), v.end(), [&](const Rat& x) { return sign(x) == lead; }))
      return {std::nullopt, "NoPositiveSolution: kernel misses the positive orthant on " + where};
    for (std::size_t c = 0; c < comp.size(); ++c) s.beta[comp[c]] = v[c] / v[0];
    ++s.kernel_dim;
  }
  return {std::move(s), {}};
}

inline Parallelotope apply_scaling(Parallelotope P, const CanonicalScaling& s) {
  for (std::size_t i = 0; i < P.size(); ++i) P.pairs[i].q = s.beta[i] * P.pairs[i].q;
  return P;
}

struct SymmetryResult {
  bool symmetric = false;
  RatMatrix table;  ///< (i, j) -> q_i^T t_j
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

inline SymmetryResult symmetry_check(const Parallelotope& P) {
  const std::size_t m = P.size();
  SymmetryResult r{true, RatMatrix(m, m), std::nullopt};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) r.table(i, j) = dot(P.pairs[i].q, P.pairs[j].t);
  for (std::size_t i = 0; i < m && !r.witness; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (r.table(i, j) != r.table(j, i)) {
        r.symmetric = false;
        r.witness = std::pair{i, j};
        break;
      }
  return r;
}

struct RecoveredForm {
  QuadraticForm D;
  std::vector<std::size_t> basis;
  std::optional<std::vector<std::size_t>> alternative_basis;
};

/// D = (T_b^T)^{-1} Q_b^T from the lexicographically first independent
/// n-subset of lattice vectors, checked against q_i = D t_i for every i and
/// recomputed from the next independent subset when there is one.
inline RecoveredForm recover_form(const Parallelotope& P) {
  const std::size_t n = P.dim;
  std::vector<std::vector<std::size_t>> bases;
  detail::for_each_subset(P.size(), n, [&](const std::vector<std::size_t>& s) {
    if (bases.size() == 2) return;
    std::vector<RatVector> ts;
    for (auto i : s) ts.push_back(to_rat(P.pairs[i].t));
    if (rank(ts) == n) bases.push_back(s);
  });
  if (bases.empty()) throw RankDeficient("lattice vectors contain no independent n-subset");

  auto from_basis = [&](const std::vector<std::size_t>& b) {
    std::vector<RatVector> ts, qs;
    for (auto i : b) {
      ts.push_back(to_rat(P.pairs[i].t));
      qs.push_back(P.pairs[i].q);
    }
    // T_b^T D = Q_b^T, solved one column of D at a time.
    const RatMatrix TbT = RatMatrix::from_rows(ts);
    const RatMatrix QbT = RatMatrix::from_rows(qs);
    RatMatrix D(n, n);
    for (std::size_t c = 0; c < n; ++c) {
      const auto col = solve(TbT, QbT.col(c));
      for (std::size_t r = 0; r < n; ++r) D(r, c) = (*col)[r];
    }
    return D;
  };

  const RatMatrix D = from_basis(bases[0]);
  if (!D.is_symmetric()) throw Inconsistent("recovered matrix is not symmetric");
  for (std::size_t i = 0; i < P.size(); ++i)
    if (D * P.pairs[i].t != P.pairs[i].q) throw Inconsistent("q_" + std::to_string(i) + " != D t_" + std::to_string(i));
  RecoveredForm out{QuadraticForm(D), bases[0], std::nullopt};
  if (bases.size() > 1) {
    if (!(from_basis(bases[1]) == D)) throw Inconsistent("recovered matrix depends on the basis choice");
    out.alternative_basis = bases[1];
  }
  return out;
}

struct CertifyOptions {
  std::size_t radius = 2;
  std::uint64_t seed = 0x5eed;
  std::size_t samples = 100;
};

enum class Verdict { Pass, Fail };

struct Certificate {
  Verdict verdict = Verdict::Fail;
  std::string failed_condition;  ///< empty on Pass
  std::string detail;
  VenkovReport venkov;
  CanonicalResult canonical;
  std::optional<SymmetryResult> symmetry;
  std::optional<QuadraticForm> D;
  std::optional<LdltFactors> factors;
  bool positive_definite = false;
  std::optional<PegReport> pegs;
  std::optional<GeneratrissaReport> generatrissa;
  std::uint64_t seed = 0;
  std::size_t radius = 0;

  bool pegs_ok() const { return pegs && pegs->pass; }
  bool generatrissa_ok() const { return generatrissa && generatrissa->pass; }
  bool passed() const { return verdict == Verdict::Pass; }
};

/// Runs venkov -> belts -> canonical scaling -> rescale -> symmetry ->
/// recover D -> positive definiteness -> pegs -> generatrissa, stopping at
/// the first failing stage. P must already satisfy validate().
inline Certificate certify(const Parallelotope& P, const CertifyOptions& opt = {}) {
  Certificate c;
  c.seed = opt.seed;
  c.radius = opt.radius;
  auto fail = [&](std::string cond, std::string detail) {
    c.verdict = Verdict::Fail;
    c.failed_condition = std::move(cond);
    c.detail = std::move(detail);
    return c;
  };

  const VertexSet vs = enumerate_vertices(P);
  c.venkov = venkov_check(P, vs);
  if (!c.venkov.pass) return fail("venkov", c.venkov.failures.front());

  try {
    c.canonical = canonical_scaling(P, c.venkov.belts);
  } catch (const InputNotParallelotope& e) {
    return fail("canonical", e.what());
  }
  if (!c.canonical) return fail("canonical", c.canonical.failure);

  const Parallelotope S = apply_scaling(P, *c.canonical.scaling);
  c.symmetry = symmetry_check(S);
  if (!c.symmetry->symmetric) return fail("symmetry", "q_i^T t_j != q_j^T t_i");

  try {
    c.D = recover_form(S).D;
  } catch (const Error& e) {
    return fail("recover_form", e.what());
  }
  c.factors = ldlt(*c.D);
  c.positive_definite = is_positive_definite(*c.D);
  if (!c.positive_definite) return fail("positive_definite", "recovered form is not positive definite");

  const Patch patch = build_patch(S, opt.radius);
  c.pegs = verify_pegs(S, *c.D, patch);
  if (!c.pegs->pass) return fail("pegs", "peg difference is not a positive multiple of the facet vector");

  c.generatrissa = verify_generatrissa(S, *c.D, vs, patch, interior_samples(vs, P.dim, opt.samples, opt.seed), opt.seed);
  if (!c.generatrissa->pass) return fail("generatrissa", c.generatrissa->failures.front());

  c.verdict = Verdict::Pass;
  return c;
}

}  // namespace vcert
