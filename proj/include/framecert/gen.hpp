#pragma once

// Seed-deterministic generators (full-spark families, rational rotations,
// the two-basis construction) and the named fixture families.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "framecert/subspaces.hpp"

namespace framecert {

// Exactly orthogonal rational rotation via the Cayley transform of a seeded
// small rational skew-symmetric matrix: Q = (I - S)(I + S)^(-1).
MatrixNM<Rat> random_rational_rotation(std::size_t n, std::uint64_t seed);

// Seeded Gaussian directions, rationalized, exhaustively verified full
// spark in exact arithmetic; resamples on failure. M >= N required.
VectorFamily<Rat> random_full_spark(std::size_t n, std::size_t m, std::uint64_t seed);

// Canonical basis plus a random rational ONB, dropping the ONB's last
// vector: 2N-1 vectors verified full spark, together with the family of
// their hyperplane complements.
std::pair<VectorFamily<Rat>, SubspaceFamily<Rat>> two_basis_construction(std::size_t n,
                                                                         std::uint64_t seed);

// Family of hyperplanes {normal_i ^ perp}.
template <class T>
SubspaceFamily<T> hyperplane_family(std::size_t n, const std::vector<Vec<T>>& normals,
                                    double tol = 1e-10) {
  std::vector<Subspace<T>> subs;
  for (const auto& nv : normals) {
    auto basis = nullspace_of_rows(std::vector<Vec<T>>{nv}, n, tol);
    subs.push_back(Subspace<T>::from_basis(n, std::move(basis), tol));
  }
  return SubspaceFamily<T>(n, std::move(subs));
}

struct Fixture {
  std::string name;
  std::optional<VectorFamily<Rat>> vectors;
  std::optional<SubspaceFamily<Rat>> subspaces;
  json detail;
};

// Named fixtures: two_subspace_counterexample_R3,
// invertible_op_counterexample_R3, canonical_three_hyperplanes(N),
// two_basis_construction(N, seed), proof_witness_two_subspaces(N).
Fixture fixture(const std::string& name, std::size_t n = 0, std::uint64_t seed = 1);

std::vector<std::string> fixture_names();

}  // namespace framecert
