#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "vcert/errors.hpp"
#include "vcert/linalg.hpp"
#include "vcert/parallelotope.hpp"

namespace vcert {

struct Vertex {
  RatVector point;
  std::vector<std::size_t> active;  ///< halfspaces holding with equality, ascending
};

struct VertexSet {
  std::vector<Vertex> vertices;  ///< sorted lexicographically by point
  std::size_t halfspace_count = 0;

  /// Indices (into `vertices`) of the vertices lying on halfspace h.
  std::vector<std::size_t> on(std::size_t h) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (std::binary_search(vertices[v].active.begin(), vertices[v].active.end(), h)) out.push_back(v);
    return out;
  }
};

/// Dimension of the affine hull of a point set (-1 for the empty set).
inline int affine_dimension(const std::vector<RatVector>& points) {
  if (points.empty()) return -1;
  std::vector<RatVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return static_cast<int>(rank(diffs));
}

/// Basis of the direction space of the affine hull of `points`.
inline std::vector<RatVector> direction_basis(const std::vector<RatVector>& points) {
  if (points.size() < 2) return {};
  std::vector<RatVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  RatMatrix m = RatMatrix::from_rows(diffs);
  const auto pivots = rref(m);
  std::vector<RatVector> basis;
  for (std::size_t r = 0; r < pivots.size(); ++r) basis.push_back(m.row(r));
  return basis;
}

namespace detail {

inline bool parallel_opposite(const RatVector& a, const RatVector& b) {
  // b = -lambda a with lambda > 0
  std::optional<Rat> lambda;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0 && b[i] == 0) continue;
    if (a[i] == 0 || b[i] == 0) return false;
    const Rat l = -b[i] / a[i];
    if (l <= 0) return false;
    if (lambda && *lambda != l) return false;
    lambda = l;
  }
  return lambda.has_value();
}

inline bool parallel(const RatVector& a, const RatVector& b) {
  return rank(std::vector<RatVector>{a, b}) < 2;
}

// Visits every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// True iff { x : a_k^T x <= 0 for all k } = {0}.
inline bool is_bounded(const HalfspaceSystem& h) {
  const std::size_t n = h.dim;
  std::vector<RatVector> normals;
  for (const auto& hs : h.halfspaces) normals.push_back(hs.normal);
  if (rank(normals) < n) return false;
  if (n == 1) {
    bool pos = false, neg = false;
    for (const auto& a : normals) (a[0] > 0 ? pos : neg) = true;
    return pos && neg;
  }
  // A pointed cone other than {0} has an extreme ray cut out by n-1
  // independent tight constraints.
  bool bounded = true;
  detail::for_each_subset(normals.size(), n - 1, [&](const std::vector<std::size_t>& s) {
    if (!bounded) return;
    std::vector<RatVector> rows;
    for (auto k : s) rows.push_back(normals[k]);
    const auto ker = nullspace(RatMatrix::from_rows(rows));
    if (ker.size() != 1) return;
    for (int sgn : {1, -1}) {
      const RatVector d = Rat(sgn) * ker[0];
      if (std::all_of(normals.begin(), normals.end(), [&](const RatVector& a) { return dot(a, d) <= 0; }))
        bounded = false;
    }
  });
  return bounded;
}

/// All vertices of a bounded halfspace system, found by solving every
/// n-subset of the facet equalities and keeping the feasible solutions.
/// Throws UnboundedInput when the system is unbounded.
inline VertexSet enumerate_vertices(const HalfspaceSystem& h) {
  if (!is_bounded(h)) throw UnboundedInput("halfspace system is unbounded");
  const std::size_t n = h.dim;
  const auto& hs = h.halfspaces;
  std::map<RatVector, std::vector<std::size_t>> found;

  detail::for_each_subset(hs.size(), n, [&](const std::vector<std::size_t>& s) {
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        if (detail::parallel(hs[s[a]].normal, hs[s[b]].normal)) return;
    RatMatrix aug(n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) aug(r, c) = hs[s[r]].normal[c];
      aug(r, n) = hs[s[r]].offset;
    }
    const auto pivots = rref(aug);
    if (pivots.size() != n || pivots.back() != n - 1) return;
    RatVector x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = aug(r, n);
    if (found.count(x)) return;
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < hs.size(); ++k) {
      const Rat v = dot(hs[k].normal, x);
      if (v > hs[k].offset) return;
      if (v == hs[k].offset) active.push_back(k);
    }
    found.emplace(std::move(x), std::move(active));
  });

  VertexSet out;
  out.halfspace_count = hs.size();
  for (auto& [p, act] : found) out.vertices.push_back({p, act});
  return out;
}

inline VertexSet enumerate_vertices(const Parallelotope& P) { return enumerate_vertices(hrep(P)); }

inline bool check_central_symmetry(const VertexSet& vs) {
  std::set<RatVector> pts;
  for (const auto& v : vs.vertices) pts.insert(v.point);
  return std::all_of(pts.begin(), pts.end(), [&](const RatVector& p) { return pts.count(-p) > 0; });
}

/// Facet center used for the symmetry map v -> 2c - v. For a parallelotope
/// the center of F_i is t_i/2 (and -t_i/2 for the opposite facet).
inline std::vector<RatVector> facet_centers(const Parallelotope& P) {
  std::vector<RatVector> c;
  for (const auto& p : P.pairs) {
    const RatVector half = Rat(1, 2) * to_rat(p.t);
    c.push_back(half);
    c.push_back(-half);
  }
  return c;
}

/// Vertex centroid of each facet (for raw halfspace input).
inline std::vector<RatVector> facet_centroids(const VertexSet& vs, std::size_t dim) {
  std::vector<RatVector> c;
  for (std::size_t h = 0; h < vs.halfspace_count; ++h) {
    RatVector s(dim);
    const auto on = vs.on(h);
    for (auto v : on) s = s + vs.vertices[v].point;
    if (!on.empty()) s = Rat(1, static_cast<long>(on.size())) * s;
    c.push_back(s);
  }
  return c;
}

/// Per halfspace: it is a genuine facet ((n-1)-dimensional) and its vertex
/// set is invariant under v -> 2 c_h - v.
inline std::vector<bool> check_facet_symmetry(const VertexSet& vs, std::size_t dim,
                                              const std::vector<RatVector>& centers) {
  std::vector<bool> ok;
  for (std::size_t h = 0; h < vs.halfspace_count; ++h) {
    std::set<RatVector> pts;
    std::vector<RatVector> list;
    for (auto v : vs.on(h)) {
      pts.insert(vs.vertices[v].point);
      list.push_back(vs.vertices[v].point);
    }
    bool sym = affine_dimension(list) == static_cast<int>(dim) - 1;
    const RatVector twice = Rat(2) * centers[h];
    for (const auto& p : pts)
      if (sym && !pts.count(twice - p)) sym = false;
    ok.push_back(sym);
  }
  return ok;
}

inline std::vector<bool> check_facet_symmetry(const Parallelotope& P, const VertexSet& vs) {
  return check_facet_symmetry(vs, P.dim, facet_centers(P));
}

/// An (n-2)-face F_a ∩ F_b with the direction space of its affine hull.
struct Ridge {
  std::size_t facet_a;  ///< halfspace index
  std::size_t facet_b;  ///< halfspace index, facet_a < facet_b
  std::vector<std::size_t> vertices;
  std::vector<RatVector> directions;  ///< basis, n-2 vectors
};

inline std::vector<Ridge> ridges(const VertexSet& vs, std::size_t dim) {
  std::vector<std::vector<std::size_t>> on;
  for (std::size_t h = 0; h < vs.halfspace_count; ++h) on.push_back(vs.on(h));
  std::vector<Ridge> out;
  for (std::size_t a = 0; a < vs.halfspace_count; ++a)
    for (std::size_t b = a + 1; b < vs.halfspace_count; ++b) {
      std::vector<std::size_t> common;
      std::set_intersection(on[a].begin(), on[a].end(), on[b].begin(), on[b].end(), std::back_inserter(common));
      if (common.empty()) continue;
      std::vector<RatVector> pts;
      for (auto v : common) pts.push_back(vs.vertices[v].point);
      if (affine_dimension(pts) != static_cast<int>(dim) - 2) continue;
      out.push_back({a, b, common, direction_basis(pts)});
    }
  return out;
}

inline std::vector<Ridge> ridges(const Parallelotope& P, const VertexSet& vs) { return ridges(vs, P.dim); }

}  // namespace vcert
