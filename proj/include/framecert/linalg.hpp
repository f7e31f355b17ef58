#pragma once

// Dense linear algebra over the two scalar backends: exact rationals (Rat)
// and Float64. Exact-backend decisions (rank, orthogonality, span equality)
// involve no rounding at all; the float backend routes every comparison
// through an explicit tolerance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "framecert/errors.hpp"
#include "framecert/rational.hpp"

namespace framecert {

template <class T>
using Vec = std::vector<T>;

template <class T>
struct backend_traits;

template <>
struct backend_traits<Rat> {
  static constexpr bool exact = true;
  static bool is_zero(const Rat& v, double /*tol*/ = 0, const Rat& /*scale*/ = Rat(1)) {
    return v == 0;
  }
};

template <>
struct backend_traits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double v, double tol, double scale = 1.0) {
    return std::abs(v) <= tol * std::max(1.0, std::abs(scale));
  }
};

// ---------------------------------------------------------------------------
// vector helpers

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  T s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T norm_sq(const Vec<T>& a) {
  T s{};
  for (const auto& x : a) s += x * x;
  return s;
}

inline double norm(const Vec<double>& a) { return std::sqrt(norm_sq(a)); }

template <class T>
Vec<T> add(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("add: size mismatch");
  Vec<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class T>
Vec<T> sub(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("sub: size mismatch");
  Vec<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T>
Vec<T> scale(const Vec<T>& a, const T& c) {
  Vec<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

template <class T>
bool is_zero_vec(const Vec<T>& a, double tol = 0) {
  for (const auto& x : a)
    if (!backend_traits<T>::is_zero(x, tol)) return false;
  return true;
}

inline Vec<double> normalized(const Vec<double>& a) {
  const double n = norm(a);
  if (n == 0) throw ZeroVector("cannot normalize the zero vector");
  return scale(a, 1.0 / n);
}

template <class T>
Vec<T> unit_vector(std::size_t n, std::size_t i) {
  Vec<T> e(n, T{});
  e[i] = T(1);
  return e;
}

inline Vec<double> to_float(const Vec<Rat>& v) {
  Vec<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
  return r;
}

inline Vec<Rat> to_exact(const Vec<double>& v) {
  Vec<Rat> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = rat_from_double_exact(v[i]);
  return r;
}

// Clears denominators and common factors; the returned integer-entry vector
// spans the same line. Keeps exact elimination fast.
inline Vec<Rat> primitive_direction(const Vec<Rat>& v) {
  Int lcm_den = 1;
  for (const auto& x : v) lcm_den = lcm(lcm_den, denominator(x));
  Int g = 0;
  Vec<Rat> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int n = numerator(v[i]) * (lcm_den / denominator(v[i]));
    r[i] = Rat(n);
    g = gcd(g, n);
  }
  if (g > 1)
    for (auto& x : r) x /= Rat(g);
  return r;
}

// ---------------------------------------------------------------------------
// matrices

template <class T>
class MatrixNM {
 public:
  MatrixNM() : rows_(0), cols_(0) {}
  MatrixNM(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static MatrixNM identity(std::size_t n) {
    MatrixNM m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static MatrixNM from_columns(std::size_t rows, const std::vector<Vec<T>>& cols) {
    MatrixNM m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionMismatch("from_columns: ragged input");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static MatrixNM from_rows(const std::vector<Vec<T>>& rows) {
    if (rows.empty()) return MatrixNM(0, 0);
    MatrixNM m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DimensionMismatch("from_rows: ragged input");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<T> row(std::size_t i) const {
    Vec<T> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }
  Vec<T> col(std::size_t j) const {
    Vec<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  MatrixNM transpose() const {
    MatrixNM t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vec<T> apply(const Vec<T>& x) const {
    if (x.size() != cols_) throw DimensionMismatch("matrix apply: size mismatch");
    Vec<T> y(rows_, T{});
    for (std::size_t i = 0; i < rows_; ++i) {
      T s{};
      for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  MatrixNM operator*(const MatrixNM& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product: size mismatch");
    MatrixNM r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (backend_traits<T>::exact && a == T{}) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  MatrixNM operator+(const MatrixNM& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum: size mismatch");
    MatrixNM r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
  }

  MatrixNM operator-(const MatrixNM& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix diff: size mismatch");
    MatrixNM r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
  }

  bool operator==(const MatrixNM& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

inline MatrixNM<double> to_float(const MatrixNM<Rat>& m) {
  MatrixNM<double> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
  return r;
}

// ---------------------------------------------------------------------------
// incremental row echelon state
//
// Rows are kept reduced with pivot entry 1; inserting a vector reduces it
// against the current rows and either absorbs it (rank grows) or reports it
// dependent. In the float backend a vector counts as dependent when its
// residual is below tol relative to its original magnitude.

template <class T>
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t dim, double tol = 1e-10) : dim_(dim), tol_(tol) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  bool spans() const { return rank() == dim_; }
  const std::vector<Vec<T>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Residual of v after elimination against the stored rows.
  Vec<T> reduce(Vec<T> v) const {
    if (v.size() != dim_) throw DimensionMismatch("echelon reduce: size mismatch");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const T c = v[pivots_[k]];
      if (backend_traits<T>::exact ? (c == T{}) : (c == 0.0)) continue;
      for (std::size_t j = 0; j < dim_; ++j) v[j] -= c * rows_[k][j];
    }
    return v;
  }

  bool contains(const Vec<T>& v) const {
    if constexpr (backend_traits<T>::exact) {
      return is_zero_vec(reduce(v));
    } else {
      double mag = 0;
      for (double x : v) mag = std::max(mag, std::abs(x));
      const Vec<T> r = reduce(v);
      double res = 0;
      for (double x : r) res = std::max(res, std::abs(x));
      return res <= tol_ * std::max(1.0, mag);
    }
  }

  // Returns true when the rank grew.
  bool insert(const Vec<T>& v) {
    Vec<T> r = reduce(v);
    std::size_t piv = dim_;
    if constexpr (backend_traits<T>::exact) {
      for (std::size_t j = 0; j < dim_; ++j)
        if (r[j] != 0) { piv = j; break; }
      if (piv == dim_) return false;
    } else {
      double mag = 0;
      for (double x : v) mag = std::max(mag, std::abs(x));
      double best = 0;
      for (std::size_t j = 0; j < dim_; ++j)
        if (std::abs(r[j]) > best) { best = std::abs(r[j]); piv = j; }
      if (piv == dim_ || best <= tol_ * std::max(1.0, mag)) return false;
    }
    const T p = r[piv];
    for (std::size_t j = 0; j < dim_; ++j) r[j] /= p;
    r[piv] = T(1);
    // back-substitute so stored rows stay fully reduced
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const T c = rows_[k][piv];
      if (backend_traits<T>::exact ? (c == T{}) : (c == 0.0)) continue;
      for (std::size_t j = 0; j < dim_; ++j) rows_[k][j] -= c * r[j];
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
    return true;
  }

 private:
  std::size_t dim_;
  double tol_;
  std::vector<Vec<T>> rows_;
  std::vector<std::size_t> pivots_;
};

// ---------------------------------------------------------------------------
// rank / nullspace / Gram-Schmidt

// Dimension of the column span. Exact for Rat via fraction-free elimination;
// pivot threshold tol for Float64.
template <class T>
std::size_t rank(const MatrixNM<T>& m, double tol = 1e-10) {
  RowEchelon<T> ech(m.rows(), tol);
  for (std::size_t j = 0; j < m.cols() && !ech.spans(); ++j) ech.insert(m.col(j));
  return ech.rank();
}

template <class T>
std::size_t rank_of_vectors(const std::vector<Vec<T>>& vs, std::size_t dim, double tol = 1e-10) {
  RowEchelon<T> ech(dim, tol);
  for (const auto& v : vs) {
    if (ech.spans()) break;
    ech.insert(v);
  }
  return ech.rank();
}

// Basis of { x : row_i . x = 0 } via reduced row echelon form with free
// variables. Exact in the Rat backend.
template <class T>
std::vector<Vec<T>> nullspace_of_rows(const std::vector<Vec<T>>& rows, std::size_t dim,
                                      double tol = 1e-10) {
  RowEchelon<T> ech(dim, tol);
  for (const auto& r : rows) ech.insert(r);
  std::vector<bool> is_pivot(dim, false);
  for (auto p : ech.pivots()) is_pivot[p] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t f = 0; f < dim; ++f) {
    if (is_pivot[f]) continue;
    Vec<T> v(dim, T{});
    v[f] = T(1);
    for (std::size_t k = 0; k < ech.rows().size(); ++k) v[ech.pivots()[k]] = -ech.rows()[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Pairwise-orthogonal output with the same span. The Rat backend returns
// unnormalized orthogonal vectors (norms may be irrational); the Float64
// backend unit-normalizes. Throws DependentInput if rank < |vs|.
template <class T>
std::vector<Vec<T>> gram_schmidt(const std::vector<Vec<T>>& vs, double tol = 1e-10) {
  std::vector<Vec<T>> out;
  for (const auto& v : vs) {
    Vec<T> r = v;
    for (const auto& b : out) {
      const T c = dot(r, b) / norm_sq(b);
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= c * b[j];
    }
    if constexpr (backend_traits<T>::exact) {
      if (is_zero_vec(r)) throw DependentInput("gram_schmidt: dependent input");
      out.push_back(primitive_direction(r));
    } else {
      double mag = 0;
      for (double x : v) mag = std::max(mag, std::abs(x));
      if (norm(r) <= tol * std::max(1.0, mag)) throw DependentInput("gram_schmidt: dependent input");
      out.push_back(normalized(r));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// spectral helpers (Float64 only)

// Spectral norm via power iteration on m^T m. Relative accuracy ~1e-9 at
// desk scale; restarts guard against an unlucky start vector.
double operator_norm(const MatrixNM<double>& m);

// Eigenvalues (ascending) and eigenvectors (columns) of a symmetric matrix,
// cyclic Jacobi.
struct SymEig {
  std::vector<double> values;
  MatrixNM<double> vectors;
};
SymEig sym_eigen(const MatrixNM<double>& a);

// Spectral norm of a symmetric matrix as max |eigenvalue| via Jacobi.
// Unlike power iteration this does not degrade when the top of the spectrum
// is nearly degenerate.
double sym_operator_norm(const MatrixNM<double>& a);

// Smallest singular value of an N x M matrix (treated as sigma_N).
double smallest_singular_value(const MatrixNM<double>& a);

}  // namespace framecert
