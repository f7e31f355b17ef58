#pragma once

// Constructive retrieval: norm reconstruction from the canonical
// three-hyperplane measurements, tight-frame norm reconstruction, and the
// matched-moduli orthonormal basis construction.

#include <vector>

#include "framecert/frames.hpp"
#include "framecert/subspace.hpp"

namespace framecert {

// Squared projection norms ||P_i x||^2 for the canonical hyperplane triple
// with normals e1, e2 and the (e1 - e2)-direction.
struct TripleMeasurementSq {
  Rat m1_sq, m2_sq, m3_sq;
};

// Returns ||x||^2 exactly. Throws InconsistentMeasurements when no real x
// produces these measurements, NotExactlyRepresentable when the recovered
// a1^2 + a2^2 is irrational (cannot happen for measurements of a rational x).
Rat reconstruct_norm_sq_three_hyperplanes(const TripleMeasurementSq& t);

// Float path; takes the projection norms themselves.
double reconstruct_norm_three_hyperplanes(double m1, double m2, double m3, double tol = 1e-9);

// Canonical-triple measurements of x, exactly (test/CLI convenience).
TripleMeasurementSq triple_measurements(const Vec<Rat>& x);

// sqrt(sum m_i^2 / A) for a tight frame with bound A.
double reconstruct_norm_tight(const VectorFamily<double>& f, const std::vector<double>& meas,
                              double tol = 1e-9);
Rat reconstruct_norm_sq_tight(const VectorFamily<Rat>& f, const std::vector<Rat>& meas_sq);

// Lemma-L4 construction: an orthonormal basis of W whose measurement moduli
// agree on x and y (given x, y in W with equal norms).
struct MatchedBasis {
  std::vector<Vec<double>> basis;
  std::vector<double> moduli;
};
MatchedBasis matched_moduli_basis(const Subspace<double>& w, const Vec<double>& x,
                                  const Vec<double>& y, double tol = 1e-9);

}  // namespace framecert
