#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vcert/errors.hpp"
#include "vcert/rational.hpp"

namespace vcert {

using RatVector = std::vector<Rat>;
using IntVector = std::vector<std::int64_t>;

// ---------------------------------------------------------------------------
// Vector helpers
// ---------------------------------------------------------------------------

inline RatVector to_rat(std::span<const std::int64_t> v) {
  RatVector out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(to_rat(x));
  return out;
}

inline Rat dot(std::span<const Rat> a, std::span<const Rat> b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(std::span<const Rat> a, std::span<const std::int64_t> b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * static_cast<long>(b[i]);
  return s;
}

inline std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVector operator+(const RatVector& a, const RatVector& b) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatVector operator-(const RatVector& a, const RatVector& b) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RatVector operator-(const RatVector& a) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline RatVector operator*(const Rat& s, const RatVector& a) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline IntVector operator+(const IntVector& a, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVector operator-(const IntVector& a, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVector operator-(const IntVector& a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline IntVector operator*(std::int64_t s, const IntVector& a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

template <class T>
bool is_zero(const std::vector<T>& v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// Dense rational matrix, row-major.
// ---------------------------------------------------------------------------

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RatMatrix from_rows(const std::vector<RatVector>& rows) {
    if (rows.empty()) return {};
    RatMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InvalidInput("ragged matrix");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static RatMatrix from_ints(const std::vector<std::vector<std::int64_t>>& rows) {
    std::vector<RatVector> r;
    for (const auto& row : rows) r.push_back(to_rat(row));
    return from_rows(r);
  }

  /// Matrix whose columns are the given vectors.
  static RatMatrix from_columns(const std::vector<RatVector>& cols) {
    if (cols.empty()) return {};
    RatMatrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }
  RatVector col(std::size_t j) const {
    RatVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend RatVector operator*(const RatMatrix& a, const RatVector& x) {
    RatVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  friend RatVector operator*(const RatMatrix& a, const IntVector& x) {
    RatVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * static_cast<long>(x[j]);
    return y;
  }

  friend RatMatrix operator*(const Rat& s, const RatMatrix& a) {
    RatMatrix c = a;
    for (auto& x : c.data_) x *= s;
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

inline RatMatrix diagonal(const RatVector& d) {
  RatMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

// ---------------------------------------------------------------------------
// Elimination
// ---------------------------------------------------------------------------

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
inline std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RatMatrix m) { return rref(m).size(); }

inline std::size_t rank(const std::vector<RatVector>& vectors) {
  if (vectors.empty()) return 0;
  return rank(RatMatrix::from_rows(vectors));
}

/// Exact solution of M x = b. Free variables (if any) are set to zero.
/// Returns nullopt when the system is inconsistent.
inline std::optional<RatVector> solve(const RatMatrix& M, const RatVector& b) {
  RatMatrix aug(M.rows(), M.cols() + 1);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) aug(i, j) = M(i, j);
    aug(i, M.cols()) = b[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == M.cols()) return std::nullopt;
  RatVector x(M.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, M.cols());
  return x;
}

/// Basis of {x : M x = 0}, one vector per free column (that column set to 1).
inline std::vector<RatVector> nullspace(const RatMatrix& M) {
  RatMatrix r = M;
  const auto pivots = rref(r);
  std::vector<bool> is_pivot(M.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < M.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(M.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& M) {
  if (!M.square()) return std::nullopt;
  const std::size_t n = M.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = M(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Determinant by fraction-keeping Gaussian elimination.
inline Rat determinant(RatMatrix m) {
  const std::size_t n = m.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rat f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// Quadratic forms
// ---------------------------------------------------------------------------

/// Symmetric square matrix D of f(x) = x^T D x.
class QuadraticForm {
 public:
  QuadraticForm() = default;
  explicit QuadraticForm(RatMatrix d) : d_(std::move(d)) {
    if (!d_.is_symmetric()) throw InvalidInput("quadratic form matrix must be square and symmetric");
  }

  const RatMatrix& matrix() const { return d_; }
  std::size_t dim() const { return d_.rows(); }

  Rat operator()(const RatVector& x) const { return dot(x, d_ * x); }
  Rat operator()(const IntVector& x) const { return (*this)(to_rat(x)); }

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) { return a.d_ == b.d_; }

 private:
  RatMatrix d_;
};

struct LdltFactors {
  RatMatrix L;  ///< unit lower-triangular
  RatVector d;
};

/// D = L diag(d) L^T without square roots. nullopt when a leading principal
/// submatrix is singular (zero pivot).
inline std::optional<LdltFactors> ldlt(const QuadraticForm& form) {
  const RatMatrix& D = form.matrix();
  const std::size_t n = D.rows();
  LdltFactors f{RatMatrix::identity(n), RatVector(n)};
  for (std::size_t j = 0; j < n; ++j) {
    Rat dj = D(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= f.L(j, k) * f.L(j, k) * f.d[k];
    if (dj == 0) return std::nullopt;
    f.d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rat s = D(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= f.L(i, k) * f.L(j, k) * f.d[k];
      f.L(i, j) = s / dj;
    }
  }
  return f;
}

inline bool is_positive_definite(const QuadraticForm& form) {
  const auto f = ldlt(form);
  if (!f) return false;
  return std::all_of(f->d.begin(), f->d.end(), [](const Rat& x) { return x > 0; });
}

}  // namespace vcert
