#pragma once

// Perturbation and stability: the normalization bound (Lemma L7),
// Gram-Schmidt stability with the explicit recurrence constant (Lemma GrS),
// dimension preservation under projection distance (Lemma lem_dim), and
// neighborhood scans around NR-failing families (Theorems A / T9).

#include <cstdint>
#include <optional>

#include "framecert/subspaces.hpp"

namespace framecert {

// (lhs, rhs) = (|| y/||y|| - x ||, 2 || y - x ||); lhs < rhs whenever
// || y - x || < 1 and ||x|| = 1.
std::pair<double, double> normalize_perturbation_bound(const Vec<double>& x,
                                                       const Vec<double>& y);

struct StabilityReport {
  double delta = 0;                       // input perturbation bound
  double epsilon = 0;                     // guaranteed output bound C * delta
  double constant_C = 0;                  // recurrence constant, C_1 = 2
  std::vector<double> per_vector_errors;  // ||z_i - x_i||
  std::vector<double> per_vector_bounds;  // C_i * delta
  double orthonormality_residual = 0;
};

// Gram-Schmidt on the perturbed vectors; the bound constant follows the
// proof's recurrence C_k = 2 (k + sum_{i<k} C_i) with C_1 = 2.
StabilityReport stable_gram_schmidt(const std::vector<Vec<double>>& xs,
                                    const std::vector<Vec<double>>& ys, double delta);

// ||P - Q|| < 1 forces equal dimensions; returns the norm and both dims.
// A computed norm below the threshold with unequal dimensions indicates a
// broken invariant and throws.
Certificate dim_preserved_under_projection_distance(const Subspace<double>& p,
                                                    const Subspace<double>& q);

// ---------------------------------------------------------------------------
// neighborhood scans

struct ScanConfig {
  double radius = 1e-3;
  int samples = 100;
  std::uint64_t seed = 1;
  Property property = Property::NormRetrieval;
  // The guarded mode verifies the T9/Theorem-A preconditions (center fails
  // NR, dimension count below 2N-1). Unguarded mode scans any center with
  // any property.
  bool unguarded = false;
  FalsifierConfig falsifier;  // used for subspace-family samples
};

struct FirstNonFail {
  int sample_index = -1;  // 0-based
  std::uint64_t sample_seed = 0;
  std::string verdict;
};

struct ScanResult {
  int samples = 0;
  int fail = 0;
  int unknown = 0;
  int pass = 0;
  double radius = 0;
  std::uint64_t seed = 0;
  std::optional<FirstNonFail> first_nonfail;
};

ScanResult neighborhood_scan(const AnyFamily& center, const ScanConfig& cfg);

}  // namespace framecert
