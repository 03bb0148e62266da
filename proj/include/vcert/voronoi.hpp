#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "vcert/errors.hpp"
#include "vcert/linalg.hpp"
#include "vcert/parallelotope.hpp"

namespace vcert {

/// Gram matrix of Z^n under f(x) = x^T D x; always positive definite.
class LatticeForm {
 public:
  explicit LatticeForm(QuadraticForm d) : d_(std::move(d)) {
    if (d_.dim() == 0) throw InvalidInput("empty Gram matrix");
    if (!is_positive_definite(d_)) throw InvalidInput("Gram matrix is not positive definite");
  }
  explicit LatticeForm(const RatMatrix& d) : LatticeForm(QuadraticForm(d)) {}

  const QuadraticForm& form() const { return d_; }
  const RatMatrix& gram() const { return d_.matrix(); }
  std::size_t dim() const { return d_.dim(); }

 private:
  QuadraticForm d_;
};

/// Integer vectors ordered for output: support size ascending, then
/// lexicographically descending. Sign is normalized so the first nonzero
/// entry is positive.
inline IntVector normalize_sign(IntVector v) {
  for (auto x : v) {
    if (x == 0) continue;
    if (x < 0) v = -v;
    break;
  }
  return v;
}

inline bool relevant_order(const IntVector& a, const IntVector& b) {
  auto support = [](const IntVector& v) { return std::count_if(v.begin(), v.end(), [](auto x) { return x != 0; }); };
  const auto sa = support(a), sb = support(b);
  if (sa != sb) return sa < sb;
  return a > b;
}

struct RelevantVectors {
  std::vector<IntVector> vectors;  ///< one per +- pair, in relevant_order
  std::int64_t box_radius = 0;     ///< search box |z_j| <= box_radius
  Rat coset_bound;                 ///< max coset minimum seen in |z_j| <= 2
};

namespace detail {

template <class F>
void for_each_in_box(std::size_t n, std::int64_t radius, F&& f) {
  IntVector z(n, -radius);
  while (true) {
    f(z);
    std::size_t i = 0;
    while (i < n && z[i] == radius) z[i++] = -radius;
    if (i == n) return;
    ++z[i];
  }
}

inline std::size_t coset_index(const IntVector& z) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] % 2 != 0) c |= std::size_t{1} << i;
  return c;
}

}  // namespace detail

/// Voronoi-relevant vectors: nonzero t with +-t the unique minima of f on
/// the coset t + 2Z^n.
///
/// The box radius B is certified: with M = max over nonzero cosets of the
/// least norm found in |z| <= 2, every z with |z_j| > B has
///   f(z) >= (B+1)^2 / (D^{-1})_jj > 2M,
/// so no coset minimum (or tie) can lie outside the box.
inline RelevantVectors relevant_vectors(const LatticeForm& F, std::int64_t max_radius = 12) {
  const std::size_t n = F.dim();
  if (n > 6) throw InvalidInput("relevant-vector search is limited to n <= 6");
  const std::size_t cosets = std::size_t{1} << n;
  const auto& D = F.form();

  std::vector<std::optional<Rat>> least(cosets);
  detail::for_each_in_box(n, 2, [&](const IntVector& z) {
    const std::size_t c = detail::coset_index(z);
    if (c == 0) return;
    const Rat v = D(z);
    if (!least[c] || v < *least[c]) least[c] = v;
  });
  Rat M = 0;
  for (std::size_t c = 1; c < cosets; ++c) M = std::max(M, *least[c]);

  const RatMatrix Dinv = *inverse(F.gram());
  Rat worst = 0;
  for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, Dinv(j, j));
  const Rat need = 2 * M * worst;
  std::int64_t B = 2;
  while (Rat((B + 1) * (B + 1)) <= need) {
    if (++B > max_radius)
      throw BoundNotCertified("relevant-vector search box would exceed radius " + std::to_string(max_radius));
  }

  struct Best {
    std::optional<Rat> norm;
    std::vector<IntVector> argmin;
  };
  std::vector<Best> best(cosets);
  detail::for_each_in_box(n, B, [&](const IntVector& z) {
    const std::size_t c = detail::coset_index(z);
    if (c == 0) return;
    const Rat v = D(z);
    auto& b = best[c];
    if (!b.norm || v < *b.norm) {
      b.norm = v;
      b.argmin = {z};
    } else if (v == *b.norm) {
      b.argmin.push_back(z);
    }
  });

  RelevantVectors out;
  out.box_radius = B;
  out.coset_bound = M;
  for (std::size_t c = 1; c < cosets; ++c)
    if (best[c].argmin.size() == 2) out.vectors.push_back(normalize_sign(best[c].argmin.front()));
  std::sort(out.vectors.begin(), out.vectors.end(), relevant_order);
  return out;
}

/// The Voronoi polytope of F: pairs (q_i = D t_i, t_i) over relevant t_i.
inline Parallelotope build_voronoi(const LatticeForm& F) {
  Parallelotope P{F.dim(), {}};
  for (const auto& t : relevant_vectors(F).vectors) P.pairs.push_back({F.gram() * t, t});
  return P;
}

/// Image of P under x -> A x: pairs become ((A^T)^{-1} q_i, A t_i).
/// A must be non-singular and map every t_i to an integer vector.
inline Parallelotope affine_image(const Parallelotope& P, const RatMatrix& A) {
  if (A.rows() != P.dim || A.cols() != P.dim) throw InvalidInput("affine map has wrong shape");
  const auto Ainv = inverse(A);
  if (!Ainv) throw InvalidInput("affine map is singular");
  const RatMatrix AinvT = Ainv->transpose();
  Parallelotope out{P.dim, {}};
  for (std::size_t i = 0; i < P.size(); ++i) {
    const RatVector image = A * P.pairs[i].t;
    IntVector t(P.dim);
    for (std::size_t c = 0; c < P.dim; ++c) {
      if (!is_integer(image[c]) || !image[c].get_num().fits_slong_p())
        throw NonIntegralImage("A t_" + std::to_string(i) + " is not an integer vector");
      t[c] = image[c].get_num().get_si();
    }
    out.pairs.push_back({AinvT * P.pairs[i].q, std::move(t)});
  }
  return out;
}

/// Replaces q_i by beta q_i; the body is unchanged.
inline Parallelotope scale_perturb(Parallelotope P, std::size_t i, const Rat& beta) {
  if (i >= P.size()) throw InvalidInput("facet index out of range");
  if (beta <= 0) throw InvalidInput("scale factor must be positive");
  P.pairs[i].q = beta * P.pairs[i].q;
  return P;
}

// Built-in forms.

inline LatticeForm cube_form(std::size_t n) { return LatticeForm(RatMatrix::identity(n)); }

inline LatticeForm hexagonal_form() { return LatticeForm(RatMatrix::from_ints({{2, 1}, {1, 2}})); }

/// The A_3 form; its Voronoi cell is the rhombic dodecahedron.
inline LatticeForm fcc_form() { return LatticeForm(RatMatrix::from_ints({{2, 1, 1}, {1, 2, 1}, {1, 1, 2}})); }

}  // namespace vcert
