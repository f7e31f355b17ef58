#pragma once

// Certifiers and falsifiers for families of subspaces / orthogonal
// projections. Exact structural classifications decide an instance when a
// theorem applies; otherwise semi-decision falsifiers can prove failure
// (with a re-verifiable witness pair) but never success.

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "framecert/certificate.hpp"
#include "framecert/frames.hpp"
#include "framecert/subspace.hpp"

namespace framecert {

enum class Property { PhaseRetrieval, NormRetrieval };

template <class T>
struct SubspaceFamily;

using AnyFamily = std::variant<VectorFamily<Rat>, VectorFamily<double>, SubspaceFamily<Rat>,
                               SubspaceFamily<double>>;

template <class T>
struct SubspaceFamily {
  std::size_t ambient_dim = 0;
  std::vector<Subspace<T>> subspaces;

  SubspaceFamily() = default;
  SubspaceFamily(std::size_t n, std::vector<Subspace<T>> subs)
      : ambient_dim(n), subspaces(std::move(subs)) {
    if (ambient_dim < 1) throw DimensionMismatch("ambient dimension must be >= 1");
    for (const auto& w : subspaces)
      if (w.ambient_dim() != ambient_dim)
        throw DimensionMismatch("subspace family: ambient dim mismatch");
  }

  std::size_t size() const { return subspaces.size(); }
  std::size_t sum_dim() const {
    std::size_t s = 0;
    for (const auto& w : subspaces) s += w.dim();
    return s;
  }
};

inline SubspaceFamily<double> to_float(const SubspaceFamily<Rat>& fam) {
  std::vector<Subspace<double>> subs;
  subs.reserve(fam.size());
  for (const auto& w : fam.subspaces) subs.push_back(to_float(w));
  return SubspaceFamily<double>(fam.ambient_dim, std::move(subs));
}

struct FalsifierConfig {
  int starts = 64;
  int max_iters = 500;
  int lift_trials = 20;
  std::uint64_t seed = 1;
  double fail_threshold = 1e-8;  // PR: sigma_min below this is a failure candidate
  double unknown_floor = 1e-6;   // NR: span-distance above this is a failure candidate
  double diff_step = 1e-6;       // central-difference step
};

// ---------------------------------------------------------------------------
// witness pairs (Theorem thm_PD construction: u = x + y, v = x - y)

// Requires y orthogonal to every P_i x (checked) and x, y nonzero. The
// resulting pair has equal per-index projection norms; it violates NR iff
// <x, y> != 0 and violates PR always.
template <class T>
PairWitness<T> make_witness_pair(const Vec<T>& x, const Vec<T>& y, const SubspaceFamily<T>& fam,
                                 double tol_orth = 1e-9) {
  if (x.size() != fam.ambient_dim || y.size() != fam.ambient_dim)
    throw DimensionMismatch("make_witness_pair: ambient dim mismatch");
  if (is_zero_vec(x, 0.0)) throw PreconditionViolated("make_witness_pair: x is zero");
  if (is_zero_vec(y, 0.0)) throw PreconditionViolated("make_witness_pair: y is zero");
  for (const auto& w : fam.subspaces) {
    const Vec<T> px = w.project(x);
    const T ip = dot(y, px);
    bool zero;
    if constexpr (backend_traits<T>::exact) {
      zero = ip == 0;
    } else {
      zero = std::abs(ip) <= tol_orth * std::max(1.0, norm(y) * norm(px));
    }
    if (!zero) throw PreconditionViolated("make_witness_pair: y not orthogonal to P_i x");
  }
  PairWitness<T> pw;
  pw.u = add(x, y);
  pw.v = sub(x, y);
  for (const auto& w : fam.subspaces) {
    pw.norms_sq_u.push_back(norm_sq(w.project(pw.u)));
    pw.norms_sq_v.push_back(norm_sq(w.project(pw.v)));
  }
  pw.norm_sq_u = norm_sq(pw.u);
  pw.norm_sq_v = norm_sq(pw.v);
  return pw;
}

// Re-checks a pair witness against the family measurements. For NR the pair
// must have equal per-index norms and different total norms; for PR it only
// needs u != +-v.
template <class T>
bool verify_pair_witness(const PairWitness<T>& pw, const SubspaceFamily<T>& fam,
                         Property property, double tol_eq = 1e-9, double min_gap = 1e-4);

// ---------------------------------------------------------------------------
// lifts (Theorems T11 / T21)

// Concatenates a seeded randomly rotated orthonormal basis of each subspace;
// labels are "i.j" (1-based).
VectorFamily<double> lift_to_vectors(const SubspaceFamily<double>& fam, std::uint64_t seed);
// Identity rotation: concatenates the cached orthonormal bases as-is.
VectorFamily<double> lift_to_vectors_canonical(const SubspaceFamily<double>& fam);

// Runs the exact-style vector certifier on repeated random lifts; any lifted
// failure is a valid subspace-level failure (contrapositive of T11/T21).
Certificate falsify_by_lift(const SubspaceFamily<double>& fam, Property property, int trials,
                            std::uint64_t seed);

// ---------------------------------------------------------------------------
// sphere falsifiers (semi-decision; never return pass)

// Maximizes the distance from x to span{P_i x} over the unit sphere.
// A confirmed maximizer yields a norm-retrieval witness pair; with the Rat
// overload the witness is repaired to exact arithmetic when possible.
Certificate falsify_nr_subspaces(const SubspaceFamily<Rat>& fam, const FalsifierConfig& cfg);
Certificate falsify_nr_subspaces(const SubspaceFamily<double>& fam, const FalsifierConfig& cfg);

// Minimizes sigma_min of the stacked columns [P_1 x ... P_M x] over the unit
// sphere (Edidin's span condition).
Certificate falsify_pr_subspaces(const SubspaceFamily<Rat>& fam, const FalsifierConfig& cfg);
Certificate falsify_pr_subspaces(const SubspaceFamily<double>& fam, const FalsifierConfig& cfg);

// ---------------------------------------------------------------------------
// exact classification and pipelines

// Structural cases where a theorem decides norm retrieval outright:
// dimension counts, pairwise orthogonality at sum dim == N, the two-subspace
// classification, hyperplane families, and tight fusion families.
Certificate certify_nr_exact_cases(const SubspaceFamily<Rat>& fam);

// exact cases -> lift falsification -> sphere falsification.
Certificate certify_nr_subspaces(const SubspaceFamily<Rat>& fam, const FalsifierConfig& cfg);
Certificate certify_nr_subspaces(const SubspaceFamily<double>& fam, const FalsifierConfig& cfg);

// dim-1 families are decided exactly through the vector certifier (T21);
// otherwise lift falsification then sphere falsification.
Certificate certify_pr_subspaces(const SubspaceFamily<Rat>& fam, const FalsifierConfig& cfg);
Certificate certify_pr_subspaces(const SubspaceFamily<double>& fam, const FalsifierConfig& cfg);

// ---------------------------------------------------------------------------
// structural operations

// Necessary-condition screen for PR at sum dim == 2N-1.
template <class T>
Certificate check_pairwise_trivial_intersection(const SubspaceFamily<T>& fam,
                                                double tol = 1e-10) {
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      const std::size_t d = intersection_dim(fam.subspaces[i], fam.subspaces[j], tol);
      if (d > 0) {
        return Certificate::fail(
            "pairwise-intersection",
            IndexListWitness{{static_cast<int>(i) + 1, static_cast<int>(j) + 1}},
            {{"intersection_dim", d}});
      }
    }
  }
  return Certificate::pass("pairwise-intersection");
}

// W_i = U_i (+) V_i with U_i orthogonal to V_i; returns {U_i} followed by {V_i}.
template <class T>
SubspaceFamily<T> split_direct_sum(const SubspaceFamily<T>& fam,
                                   const std::vector<std::pair<Subspace<T>, Subspace<T>>>& splits,
                                   double tol = 1e-9) {
  if (splits.size() != fam.size())
    throw DimensionMismatch("split_direct_sum: one split per subspace required");
  std::vector<Subspace<T>> out_u, out_v;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& w = fam.subspaces[i];
    const auto& [u, v] = splits[i];
    if (u.ambient_dim() != fam.ambient_dim || v.ambient_dim() != fam.ambient_dim)
      throw DimensionMismatch("split_direct_sum: ambient dim mismatch");
    for (const auto& bu : u.basis())
      for (const auto& bv : v.basis()) {
        const T ip = dot(bu, bv);
        bool zero;
        if constexpr (backend_traits<T>::exact) {
          zero = ip == 0;
        } else {
          zero = std::abs(ip) <= tol * std::max(1.0, norm(bu) * norm(bv));
        }
        if (!zero) throw NotADirectSum("split_direct_sum: parts are not orthogonal");
      }
    if (u.dim() + v.dim() != w.dim())
      throw NotADirectSum("split_direct_sum: dimensions do not add up");
    for (const auto& b : u.basis())
      if (!w.contains(b, tol)) throw NotADirectSum("split_direct_sum: U_i not inside W_i");
    for (const auto& b : v.basis())
      if (!w.contains(b, tol)) throw NotADirectSum("split_direct_sum: V_i not inside W_i");
    out_u.push_back(u);
    out_v.push_back(v);
  }
  std::vector<Subspace<T>> all = out_u;
  all.insert(all.end(), out_v.begin(), out_v.end());
  return SubspaceFamily<T>(fam.ambient_dim, std::move(all));
}

// {W_i^perp}; rejects families containing the full space.
template <class T>
SubspaceFamily<T> complements_family(const SubspaceFamily<T>& fam, double tol = 1e-10) {
  std::vector<Subspace<T>> comps;
  for (const auto& w : fam.subspaces) {
    if (w.dim() == fam.ambient_dim)
      throw FullSpaceMember("complements_family: member equals the full space");
    comps.push_back(orthogonal_complement(w, tol));
  }
  return SubspaceFamily<T>(fam.ambient_dim, std::move(comps));
}

// Deterministic search for an exact norm-retrieval witness pair: a rational
// x with x outside span{P_i x}. Used by the exact certifier's fail paths.
std::optional<PairWitness<Rat>> find_nr_witness_pair_exact(const SubspaceFamily<Rat>& fam);

}  // namespace framecert
