#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "framecert/gen.hpp"
#include "framecert/retrieve.hpp"

using namespace framecert;

namespace {

Vec<Rat> rv(std::initializer_list<int> xs) {
  Vec<Rat> v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("three-hyperplane reconstruction: worked point x = (1,2,3)") {
  const auto t = triple_measurements(rv({1, 2, 3}));
  CHECK(t.m1_sq == Rat(13));
  CHECK(t.m2_sq == Rat(10));
  CHECK(t.m3_sq == Rat(27) / 2);
  CHECK(reconstruct_norm_sq_three_hyperplanes(t) == Rat(14));

  const double nrm = reconstruct_norm_three_hyperplanes(std::sqrt(13.0), std::sqrt(10.0),
                                                        std::sqrt(13.5));
  CHECK(nrm == doctest::Approx(3.741657386774).epsilon(1e-12));
}

TEST_CASE("three-hyperplane reconstruction: corner cases") {
  // x = e3: all three projections have norm 1
  CHECK(reconstruct_norm_sq_three_hyperplanes({Rat(1), Rat(1), Rat(1)}) == Rat(1));
  CHECK(reconstruct_norm_three_hyperplanes(1, 1, 1) == doctest::Approx(1.0));

  // x = (a, 0, ..., 0): measurements (0, a^2, a^2/2) -> |a|
  CHECK(reconstruct_norm_sq_three_hyperplanes({Rat(0), Rat(9), Rat(9) / 2}) == Rat(9));

  // no real x: S would be negative
  CHECK_THROWS_AS(reconstruct_norm_sq_three_hyperplanes({Rat(0), Rat(0), Rat(1)}),
                  InconsistentMeasurements);
  CHECK_THROWS_AS(reconstruct_norm_three_hyperplanes(0, 0, 1), InconsistentMeasurements);
  CHECK_THROWS_AS(reconstruct_norm_sq_three_hyperplanes({Rat(-1), Rat(1), Rat(1)}),
                  InconsistentMeasurements);
}

TEST_CASE("three-hyperplane reconstruction is exact on random rational vectors") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 8;  // N in 3..10
    Vec<Rat> x(n);
    for (auto& e : x) e = Rat(num(rng), den(rng));
    if (is_zero_vec(x)) continue;
    const auto t = triple_measurements(x);
    CHECK(reconstruct_norm_sq_three_hyperplanes(t) == norm_sq(x));

    const double got = reconstruct_norm_three_hyperplanes(
        std::sqrt(to_double(t.m1_sq)), std::sqrt(to_double(t.m2_sq)),
        std::sqrt(to_double(t.m3_sq)));
    const double want = std::sqrt(to_double(norm_sq(x)));
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("tight-frame norm reconstruction") {
  // ONB: Parseval
  VectorFamily<double> onb(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(reconstruct_norm_tight(onb, {3.0, 4.0, 0.0}) == doctest::Approx(5.0));

  // Mercedes-Benz triple, x = (1, 0): measurements (1, 1/2, 1/2), A = 3/2
  const double s = std::sqrt(3.0) / 2;
  VectorFamily<double> mb(2, {{1.0, 0.0}, {-0.5, s}, {-0.5, -s}});
  CHECK(reconstruct_norm_tight(mb, {1.0, 0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(reconstruct_norm_tight(mb, {0.0, 0.0, 0.0}) == doctest::Approx(0.0));

  VectorFamily<double> skew(2, {{1, 0}, {1, 1}});
  CHECK_THROWS_AS(reconstruct_norm_tight(skew, {1.0, 1.0}), NotTight);

  // exact variant on an exactly tight rational family
  VectorFamily<Rat> ronb(2, {rv({1, 0}), rv({0, 1})});
  CHECK(reconstruct_norm_sq_tight(ronb, {Rat(9), Rat(16)}) == Rat(25));
}

TEST_CASE("matched moduli basis: worked example W = R^2, x = e1, y = e2") {
  const auto w = Subspace<double>::from_basis(2, {{1.0, 0.0}, {0.0, 1.0}});
  const auto mb = matched_moduli_basis(w, {1.0, 0.0}, {0.0, 1.0});
  REQUIRE(mb.basis.size() == 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // first vector lies in (x - y)^perp: the (1,1)/sqrt(2) direction
  CHECK(std::abs(std::abs(mb.basis[0][0]) - inv_sqrt2) < 1e-12);
  CHECK(std::abs(mb.basis[0][0] - mb.basis[0][1]) < 1e-12);
  // second completes the ONB: the (1,-1)/sqrt(2) direction
  CHECK(std::abs(mb.basis[1][0] + mb.basis[1][1]) < 1e-12);
  CHECK(mb.moduli[0] == doctest::Approx(inv_sqrt2));
  CHECK(mb.moduli[1] == doctest::Approx(inv_sqrt2));
}

TEST_CASE("matched moduli basis: degenerate inputs") {
  const auto w = Subspace<double>::from_basis(3, {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  // x = y: the cached orthonormal basis is returned
  const auto mb = matched_moduli_basis(w, {1.0, 1.0, 0.0}, {1.0, 1.0, 0.0});
  CHECK(mb.basis == w.orthogonal_basis());

  // p = 1 with x = -y
  const auto line = Subspace<double>::from_basis(2, {{3.0, 4.0}});
  const auto mb1 = matched_moduli_basis(line, {3.0, 4.0}, {-3.0, -4.0});
  REQUIRE(mb1.basis.size() == 1);
  CHECK(mb1.moduli[0] == doctest::Approx(5.0));

  CHECK_THROWS_AS(matched_moduli_basis(w, {0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}),
                  PreconditionViolated);  // x not in W
  CHECK_THROWS_AS(matched_moduli_basis(w, {1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}),
                  PreconditionViolated);  // norms differ
}

TEST_CASE("matched moduli basis: invariants on random inputs") {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 5, p = 2 + trial % 3;
    std::vector<Vec<double>> basis(p, Vec<double>(n));
    for (auto& b : basis)
      for (auto& e : b) e = gauss(rng);
    Subspace<double> w = Subspace<double>::from_basis(n, basis);
    // x, y in W with equal norms
    Vec<double> cx(p), cy(p);
    for (auto& e : cx) e = gauss(rng);
    for (auto& e : cy) e = gauss(rng);
    Vec<double> x(n, 0.0), y(n, 0.0);
    const auto& onb = w.orthogonal_basis();
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        x[j] += cx[i] * onb[i][j];
        y[j] += cy[i] * onb[i][j];
      }
    y = scale(y, norm(x) / norm(y));

    const auto mb = matched_moduli_basis(w, x, y);
    REQUIRE(mb.basis.size() == p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        const double want = i == j ? 1.0 : 0.0;
        CHECK(std::abs(dot(mb.basis[i], mb.basis[j]) - want) <= 1e-10);
      }
    double sumsq = 0;
    for (std::size_t i = 0; i < p; ++i) {
      CHECK(std::abs(std::abs(dot(x, mb.basis[i])) - std::abs(dot(y, mb.basis[i]))) <= 1e-9);
      sumsq += dot(x, mb.basis[i]) * dot(x, mb.basis[i]);
    }
    CHECK(sumsq == doctest::Approx(norm_sq(x)).epsilon(1e-9));
  }
}

TEST_CASE("matched moduli lift mirrors the T21 proof step") {
  // subspace family + pair with equal projection norms: lifting every
  // subspace through its matched basis yields equal measurement moduli
  const auto fx = fixture("two_subspace_counterexample_R3");
  const auto famf = to_float(*fx.subspaces);
  const Vec<double> x{0.0, 0.0, 1.0}, y{1.0, 1.0, 0.0};
  for (const auto& w : famf.subspaces) {
    const auto mb = matched_moduli_basis(w, w.project(x), w.project(y));
    for (const auto& phi : mb.basis)
      CHECK(std::abs(std::abs(dot(x, phi)) - std::abs(dot(y, phi))) <= 1e-9);
  }
}
