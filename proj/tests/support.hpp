#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "vcert/vcert.hpp"

namespace vt {

using namespace vcert;

struct Named {
  std::string name;
  Parallelotope P;
};

inline std::vector<std::pair<std::string, LatticeForm>> builtin_forms() {
  return {{"cube2", cube_form(2)},
          {"cube3", cube_form(3)},
          {"cube4", cube_form(4)},
          {"hexagonal", hexagonal_form()},
          {"fcc", fcc_form()}};
}

inline std::vector<Named> builtins() {
  std::vector<Named> out;
  for (auto& [name, F] : builtin_forms()) out.push_back({name, build_voronoi(F)});
  return out;
}

inline Parallelotope hexagon() { return build_voronoi(hexagonal_form()); }
inline Parallelotope perturbed_hexagon() { return scale_perturb(hexagon(), 0, 2); }

/// Laplace expansion along the first row.
inline Rat cofactor_det(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rat total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    RatMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    const Rat term = m(0, c) * cofactor_det(minor);
    total += (c % 2 == 0) ? term : Rat(-term);
  }
  return total;
}

inline RatMatrix leading(const RatMatrix& m, std::size_t k) {
  RatMatrix out(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out(i, j) = m(i, j);
  return out;
}

/// Sylvester: all leading principal minors positive.
inline bool minors_positive(const RatMatrix& m) {
  for (std::size_t k = 1; k <= m.rows(); ++k)
    if (cofactor_det(leading(m, k)) <= 0) return false;
  return true;
}

/// Relevant vectors by exhaustive coset minimization over |z_j| <= box.
/// Written independently of the library search: plain nested counting.
inline std::vector<IntVector> brute_relevant(const RatMatrix& D, std::int64_t box) {
  const std::size_t n = D.rows();
  std::map<std::vector<int>, std::pair<Rat, std::vector<IntVector>>> best;
  std::int64_t side = 2 * box + 1, total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= side;
  for (std::int64_t code = 0; code < total; ++code) {
    IntVector z(n);
    std::int64_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = c % side - box;
      c /= side;
    }
    std::vector<int> parity(n);
    bool zero_class = true;
    for (std::size_t i = 0; i < n; ++i) {
      parity[i] = static_cast<int>(((z[i] % 2) + 2) % 2);
      if (parity[i]) zero_class = false;
    }
    if (zero_class) continue;
    Rat norm = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) norm += D(i, j) * Rat(static_cast<long>(z[i] * z[j]));
    auto it = best.find(parity);
    if (it == best.end() || norm < it->second.first)
      best[parity] = {norm, {z}};
    else if (norm == it->second.first)
      it->second.second.push_back(z);
  }
  std::vector<IntVector> out;
  for (auto& [p, entry] : best) {
    if (entry.second.size() != 2) continue;
    IntVector v = entry.second.front();
    const auto first = std::find_if(v.begin(), v.end(), [](auto x) { return x != 0; });
    if (*first < 0)
      for (auto& x : v) x = -x;
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<IntVector> sorted(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline Rat cross(const RatVector& o, const RatVector& a, const RatVector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Exact monotone-chain convex hull in the plane, collinear points dropped.
inline std::vector<RatVector> hull2d(std::vector<RatVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<RatVector> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// Integer matrices with entries in [-bound, bound] and determinant +-1.
inline RatMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int bound = 3) {
  std::uniform_int_distribution<int> entry(-bound, bound);
  while (true) {
    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
    for (auto& r : rows)
      for (auto& x : r) x = entry(rng);
    const RatMatrix A = RatMatrix::from_ints(rows);
    const Rat d = determinant(A);
    if (d == 1 || d == -1) return A;
  }
}

/// D = A^T A + I for a random small integer A: always positive definite.
inline LatticeForm random_form(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> entry(-1, 1);
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
  for (auto& r : rows)
    for (auto& x : r) x = entry(rng);
  const RatMatrix A = RatMatrix::from_ints(rows);
  RatMatrix D = A.transpose() * A;
  for (std::size_t i = 0; i < n; ++i) D(i, i) += 1;
  return LatticeForm(D);
}

inline RatVector rv(std::initializer_list<Rat> xs) { return RatVector(xs); }

}  // namespace vt
