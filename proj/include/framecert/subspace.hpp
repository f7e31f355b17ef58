#pragma once

// Subspaces of R^N given by a spanning set, with a cached orthogonal basis
// and exact orthogonal projection. In the Rat backend the orthogonal basis
// stays unnormalized (normalizing would introduce square roots); projections
// are still exact via P = sum b b^T / <b,b>.

#include <cstddef>
#include <vector>

#include "framecert/linalg.hpp"

namespace framecert {

template <class T>
class Subspace {
 public:
  // Basis must be linearly independent.
  static Subspace from_basis(std::size_t ambient, std::vector<Vec<T>> basis, double tol = 1e-10) {
    if (basis.empty()) throw DependentInput("subspace needs at least one basis vector");
    for (const auto& v : basis)
      if (v.size() != ambient) throw DimensionMismatch("subspace basis: ambient dim mismatch");
    if (rank_of_vectors(basis, ambient, tol) != basis.size())
      throw DependentInput("subspace basis: vectors are dependent");
    return Subspace(ambient, std::move(basis), tol);
  }

  // Drops dependent vectors instead of rejecting them.
  static Subspace span_of(std::size_t ambient, const std::vector<Vec<T>>& vectors,
                          double tol = 1e-10) {
    RowEchelon<T> ech(ambient, tol);
    std::vector<Vec<T>> kept;
    for (const auto& v : vectors) {
      if (v.size() != ambient) throw DimensionMismatch("subspace span: ambient dim mismatch");
      RowEchelon<T> probe = ech;
      if (probe.insert(v)) {
        ech = std::move(probe);
        kept.push_back(v);
      }
    }
    if (kept.empty()) throw DependentInput("span_of: no independent vectors");
    return Subspace(ambient, std::move(kept), tol);
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec<T>>& basis() const { return basis_; }
  const std::vector<Vec<T>>& orthogonal_basis() const { return orth_; }

  // Orthogonal projection onto the subspace.
  Vec<T> project(const Vec<T>& x) const {
    if (x.size() != ambient_) throw DimensionMismatch("project: ambient dim mismatch");
    Vec<T> out(ambient_, T{});
    for (const auto& b : orth_) {
      const T c = dot(b, x) / norm_sq(b);
      for (std::size_t j = 0; j < ambient_; ++j) out[j] += c * b[j];
    }
    return out;
  }

  MatrixNM<T> projection_matrix() const {
    MatrixNM<T> p(ambient_, ambient_);
    for (const auto& b : orth_) {
      const T bb = norm_sq(b);
      for (std::size_t i = 0; i < ambient_; ++i) {
        if (backend_traits<T>::exact && b[i] == T{}) continue;
        for (std::size_t j = 0; j < ambient_; ++j) p(i, j) += b[i] * b[j] / bb;
      }
    }
    return p;
  }

  bool contains(const Vec<T>& x, double tol = 1e-10) const {
    RowEchelon<T> ech(ambient_, tol);
    for (const auto& b : basis_) ech.insert(b);
    return ech.contains(x);
  }

 private:
  Subspace(std::size_t ambient, std::vector<Vec<T>> basis, double tol)
      : ambient_(ambient), basis_(std::move(basis)), orth_(gram_schmidt(basis_, tol)) {}

  std::size_t ambient_;
  std::vector<Vec<T>> basis_;
  std::vector<Vec<T>> orth_;
};

// W-perp; the complement of the full space is represented by an empty basis,
// so it is returned as an optional-like empty vector of basis vectors via
// the dedicated struct below.
template <class T>
std::vector<Vec<T>> orthogonal_complement_basis(const Subspace<T>& w, double tol = 1e-10) {
  return nullspace_of_rows(w.basis(), w.ambient_dim(), tol);
}

template <class T>
Subspace<T> orthogonal_complement(const Subspace<T>& w, double tol = 1e-10) {
  auto basis = orthogonal_complement_basis(w, tol);
  if (basis.empty()) throw FullSpaceMember("orthogonal complement is the zero subspace");
  return Subspace<T>::from_basis(w.ambient_dim(), std::move(basis), tol);
}

template <class T>
std::size_t intersection_dim(const Subspace<T>& w1, const Subspace<T>& w2, double tol = 1e-10) {
  if (w1.ambient_dim() != w2.ambient_dim())
    throw DimensionMismatch("intersection_dim: ambient dims differ");
  std::vector<Vec<T>> stacked = w1.basis();
  stacked.insert(stacked.end(), w2.basis().begin(), w2.basis().end());
  const std::size_t r = rank_of_vectors(stacked, w1.ambient_dim(), tol);
  return w1.dim() + w2.dim() - r;
}

template <class T>
bool equal_span(const Subspace<T>& a, const Subspace<T>& b, double tol = 1e-10) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  std::vector<Vec<T>> stacked = a.basis();
  stacked.insert(stacked.end(), b.basis().begin(), b.basis().end());
  return rank_of_vectors(stacked, a.ambient_dim(), tol) == a.dim();
}

inline Subspace<double> to_float(const Subspace<Rat>& w) {
  std::vector<Vec<double>> basis;
  basis.reserve(w.dim());
  for (const auto& b : w.basis()) basis.push_back(to_float(b));
  return Subspace<double>::from_basis(w.ambient_dim(), std::move(basis));
}

}  // namespace framecert
