#include "framecert/retrieve.hpp"

#include <cmath>

namespace framecert {

// The proof recovers a1^2 - a2^2 and a1 a2 from the measurements, hence
// a1^2 + a2^2 = sqrt((a1^2 - a2^2)^2 + 4 (a1 a2)^2), taking the nonnegative
// root; then ||x||^2 = (m1^2 + m2^2)/2 + (a1^2 + a2^2)/2.
Rat reconstruct_norm_sq_three_hyperplanes(const TripleMeasurementSq& t) {
  if (t.m1_sq < 0 || t.m2_sq < 0 || t.m3_sq < 0)
    throw InconsistentMeasurements("squared measurements must be nonnegative");
  const Rat diff = t.m2_sq - t.m1_sq;                      // a1^2 - a2^2
  const Rat prod = t.m3_sq - (t.m1_sq + t.m2_sq) / 2;      // a1 a2
  const Rat disc = diff * diff + 4 * prod * prod;          // (a1^2 + a2^2)^2
  const auto root = exact_sqrt(disc);
  if (!root) throw NotExactlyRepresentable("a1^2 + a2^2 is irrational for these measurements");
  const Rat a_sq_sum = *root;
  // S = sum_{i>=3} a_i^2 must be nonnegative
  const Rat s = (t.m1_sq + t.m2_sq - a_sq_sum) / 2;
  if (s < 0) throw InconsistentMeasurements("no real vector matches these measurements");
  const Rat a2_sq = (a_sq_sum - diff) / 2;
  if (a2_sq < 0 || a_sq_sum - a2_sq < 0)
    throw InconsistentMeasurements("no real vector matches these measurements");
  return (t.m1_sq + t.m2_sq) / 2 + a_sq_sum / 2;
}

double reconstruct_norm_three_hyperplanes(double m1, double m2, double m3, double tol) {
  if (m1 < 0 || m2 < 0 || m3 < 0)
    throw InconsistentMeasurements("measurements must be nonnegative");
  const double s1 = m1 * m1, s2 = m2 * m2, s3 = m3 * m3;
  const double diff = s2 - s1;
  const double prod = s3 - (s1 + s2) / 2;
  const double a_sq_sum = std::sqrt(diff * diff + 4 * prod * prod);
  const double scale = std::max({1.0, s1, s2, s3});
  if ((s1 + s2 - a_sq_sum) / 2 < -tol * scale)
    throw InconsistentMeasurements("no real vector matches these measurements");
  return std::sqrt((s1 + s2) / 2 + a_sq_sum / 2);
}

TripleMeasurementSq triple_measurements(const Vec<Rat>& x) {
  if (x.size() < 2) throw DimensionMismatch("triple measurements need N >= 2");
  const Rat total = norm_sq(x);
  const Rat d = x[0] - x[1];
  return TripleMeasurementSq{total - x[0] * x[0], total - x[1] * x[1], total - d * d / 2};
}

double reconstruct_norm_tight(const VectorFamily<double>& f, const std::vector<double>& meas,
                              double tol) {
  const auto a = is_tight(f, tol);
  if (!a) throw NotTight("frame is not tight");
  if (meas.size() != f.size()) throw DimensionMismatch("one measurement per frame vector");
  double s = 0;
  for (double m : meas) s += m * m;
  return std::sqrt(s / *a);
}

Rat reconstruct_norm_sq_tight(const VectorFamily<Rat>& f, const std::vector<Rat>& meas_sq) {
  const auto a = is_tight(f);
  if (!a) throw NotTight("frame is not tight");
  if (meas_sq.size() != f.size()) throw DimensionMismatch("one measurement per frame vector");
  Rat s{};
  for (const auto& m : meas_sq) {
    if (m < 0) throw InconsistentMeasurements("squared measurements must be nonnegative");
    s += m;
  }
  return s / *a;
}

namespace {

// First vector of an orthonormal basis of the nullspace of `constraints`
// inside R^p, deterministic in the coordinate order; sign fixed so the
// first nonzero entry is positive.
Vec<double> first_nullspace_direction(const std::vector<Vec<double>>& constraints,
                                      std::size_t p) {
  const auto ns = nullspace_of_rows(constraints, p, 1e-12);
  if (ns.empty()) throw PreconditionViolated("constraint nullspace is empty");
  Vec<double> v = normalized(ns.front());
  for (double e : v) {
    if (std::abs(e) > 1e-12) {
      if (e < 0)
        for (auto& c : v) c = -c;
      break;
    }
  }
  return v;
}

}  // namespace

MatchedBasis matched_moduli_basis(const Subspace<double>& w, const Vec<double>& x,
                                  const Vec<double>& y, double tol) {
  const std::size_t p = w.dim();
  if (!w.contains(x, tol) || !w.contains(y, tol))
    throw PreconditionViolated("matched_moduli_basis: x, y must lie in W");
  if (std::abs(norm(x) - norm(y)) > tol * std::max(1.0, norm(x)))
    throw PreconditionViolated("matched_moduli_basis: norms differ");

  const auto& onb = w.orthogonal_basis();  // orthonormal in the float backend
  auto in_w_coords = [&](const Vec<double>& v) {
    Vec<double> c(p);
    for (std::size_t i = 0; i < p; ++i) c[i] = dot(onb[i], v);
    return c;
  };
  auto from_w_coords = [&](const Vec<double>& c) {
    Vec<double> v(w.ambient_dim(), 0.0);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += c[i] * onb[i][j];
    return v;
  };

  MatchedBasis out;
  const Vec<double> d = sub(in_w_coords(x), in_w_coords(y));
  if (p == 1 || norm(d) <= tol) {
    // x = y (or a 1-dimensional W): the cached basis already matches
    out.basis = onb;
  } else {
    std::vector<Vec<double>> constraints{d};
    std::vector<Vec<double>> coords;
    for (std::size_t k = 0; k + 1 < p; ++k) {
      const Vec<double> phi = first_nullspace_direction(constraints, p);
      coords.push_back(phi);
      constraints.push_back(phi);
    }
    // last vector completes the orthonormal basis of W
    coords.push_back(first_nullspace_direction(
        std::vector<Vec<double>>(coords.begin(), coords.end()), p));
    for (const auto& c : coords) out.basis.push_back(from_w_coords(c));
  }
  for (const auto& phi : out.basis) out.moduli.push_back(std::abs(dot(x, phi)));
  return out;
}

}  // namespace framecert
