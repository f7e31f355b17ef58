#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "framecert/gen.hpp"
#include "framecert/perturb.hpp"

using namespace framecert;

namespace {

Vec<Rat> rv(std::initializer_list<int> xs) {
  Vec<Rat> v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("normalization bound (L7): worked example") {
  const auto [lhs, rhs] = normalize_perturbation_bound({1.0, 0.0}, {1.05, 0.05});
  CHECK(lhs == doctest::Approx(0.047578614430486194).epsilon(1e-12));
  CHECK(rhs == doctest::Approx(2 * 0.07071067811865475).epsilon(1e-12));
  CHECK(lhs < rhs);

  const auto [l2, r2] = normalize_perturbation_bound({0.0, 1.0}, {0.0, 1.0});
  CHECK(l2 == 0.0);
  CHECK(r2 == 0.0);

  const auto [l3, r3] = normalize_perturbation_bound({0.0, 1.0}, {0.0, 2.0});
  CHECK(l3 == doctest::Approx(0.0));
  CHECK(r3 == doctest::Approx(2.0));

  CHECK_THROWS_AS(normalize_perturbation_bound({1.0, 0.0}, {0.0, 0.0}), ZeroVector);
  CHECK_THROWS_AS(normalize_perturbation_bound({2.0, 0.0}, {1.0, 0.0}), PreconditionViolated);
}

TEST_CASE("normalization bound holds on random pairs") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> mag(1e-6, 0.5);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 2 + trial % 5;
    Vec<double> x(n);
    for (auto& e : x) e = gauss(rng);
    x = normalized(x);
    Vec<double> d(n);
    for (auto& e : d) e = gauss(rng);
    const double eps = mag(rng);
    const Vec<double> y = add(x, scale(normalized(d), eps));
    const auto [lhs, rhs] = normalize_perturbation_bound(x, y);
    CHECK(lhs < rhs);
  }
}

TEST_CASE("stable Gram-Schmidt: identity perturbation") {
  std::vector<Vec<double>> xs{{1, 0, 0}, {0, 1, 0}};
  const auto rep = stable_gram_schmidt(xs, xs, 0.0);
  for (double e : rep.per_vector_errors) CHECK(e <= 1e-14);
  CHECK(rep.orthonormality_residual <= 1e-14);
  CHECK(rep.constant_C == doctest::Approx(8.0));  // C_1 = 2, C_2 = 2(2 + 2)
}

TEST_CASE("stable Gram-Schmidt: p = 1 reduces to Lemma L7") {
  std::vector<Vec<double>> xs{{1.0, 0.0}};
  std::vector<Vec<double>> ys{{1.0 + 5e-5, 5e-5}};
  const auto rep = stable_gram_schmidt(xs, ys, 1e-4);
  REQUIRE(rep.per_vector_errors.size() == 1);
  CHECK(rep.per_vector_errors[0] <= 2.0 * 1e-4);
  CHECK(rep.constant_C == doctest::Approx(2.0));
}

TEST_CASE("stable Gram-Schmidt: seeded trials meet the recurrence bound") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> gauss;
  const double delta = 1e-4;
  for (std::size_t p = 2; p <= 6; ++p) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = p + 2;
      // exactly orthonormal rational start, viewed in floats
      const auto q = random_rational_rotation(n, 100 * p + trial);
      std::vector<Vec<double>> xs, ys;
      for (std::size_t i = 0; i < p; ++i) xs.push_back(to_float(q.col(i)));
      for (const auto& x : xs) {
        Vec<double> r(n);
        for (auto& e : r) e = gauss(rng);
        ys.push_back(add(x, scale(normalized(r), 0.9 * delta)));
      }
      const auto rep = stable_gram_schmidt(xs, ys, delta);
      CHECK(rep.orthonormality_residual <= 1e-12);
      for (std::size_t i = 0; i < p; ++i)
        CHECK(rep.per_vector_errors[i] <= rep.per_vector_bounds[i]);
      // span preservation, checked exactly on the rational counterpart
      std::vector<Vec<Rat>> ys_exact;
      for (const auto& y : ys) {
        Vec<Rat> yr(n);
        for (std::size_t j = 0; j < n; ++j) yr[j] = rat_from_double_exact(y[j]);
        ys_exact.push_back(yr);
      }
      const auto us = gram_schmidt(ys_exact);
      std::vector<Vec<Rat>> stacked = ys_exact;
      stacked.insert(stacked.end(), us.begin(), us.end());
      CHECK(rank_of_vectors(stacked, n) == p);
    }
  }
}

TEST_CASE("stable Gram-Schmidt: dependent perturbations are rejected") {
  std::vector<Vec<double>> xs{{1, 0}, {0, 1}};
  std::vector<Vec<double>> ys{{1, 0}, {1, 0}};
  CHECK_THROWS_AS(stable_gram_schmidt(xs, ys, 2.0), DependentPerturbation);
}

TEST_CASE("dimension preservation under projection distance") {
  const auto p = Subspace<double>::from_basis(2, {{1.0, 0.0}});
  const auto same = dim_preserved_under_projection_distance(p, p);
  CHECK(same.verdict == Verdict::Pass);
  CHECK(same.detail["operator_norm"].get<double>() == doctest::Approx(0.0));

  const double theta = M_PI / 6;
  const auto q = Subspace<double>::from_basis(2, {{std::cos(theta), std::sin(theta)}});
  const auto tilted = dim_preserved_under_projection_distance(p, q);
  CHECK(tilted.verdict == Verdict::Pass);
  CHECK(tilted.detail["operator_norm"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));

  // orthogonal lines: ||P - Q|| = 1, lemma not applicable
  const auto r = Subspace<double>::from_basis(2, {{0.0, 1.0}});
  const auto boundary = dim_preserved_under_projection_distance(p, r);
  CHECK(boundary.verdict == Verdict::Unknown);
}

TEST_CASE("dim preservation: no violations over random projection pairs") {
  std::mt19937_64 rng(33);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 3 + trial % 3;
    const std::size_t dp = 1 + trial % (n - 1);
    auto draw = [&](std::size_t d) {
      std::vector<Vec<double>> basis(d, Vec<double>(n));
      for (auto& b : basis)
        for (auto& e : b) e = gauss(rng);
      return Subspace<double>::from_basis(n, basis);
    };
    // same-dimension pairs never throw; different dims have norm >= 1
    CHECK_NOTHROW(dim_preserved_under_projection_distance(draw(dp), draw(dp)));
    const std::size_t dq = dp == n - 1 ? 1 : dp + 1;
    const auto cert = dim_preserved_under_projection_distance(draw(dp), draw(dq));
    CHECK(cert.verdict == Verdict::Unknown);
  }
}

TEST_CASE("guarded neighborhood scan: NR-failing center stays failing") {
  VectorFamily<Rat> center(2, {rv({1, 0}), rv({1, 1})});
  ScanConfig cfg;
  cfg.radius = 1e-3;
  cfg.samples = 120;
  cfg.seed = 77;
  const auto res = neighborhood_scan(AnyFamily{center}, cfg);
  CHECK(res.fail == 120);
  CHECK(res.pass == 0);
  CHECK(res.unknown == 0);
  CHECK_FALSE(res.first_nonfail.has_value());

  // determinism
  const auto res2 = neighborhood_scan(AnyFamily{center}, cfg);
  CHECK(res2.fail == res.fail);
  CHECK(res2.seed == res.seed);
}

TEST_CASE("guarded scan preconditions") {
  // an ONB passes NR: not a valid center
  VectorFamily<Rat> onb(2, {rv({1, 0}), rv({0, 1})});
  ScanConfig cfg;
  CHECK_THROWS_AS(neighborhood_scan(AnyFamily{onb}, cfg), PreconditionViolated);

  // M >= 2N-1 violates the dimension bound
  VectorFamily<Rat> big(2, {rv({1, 0}), rv({0, 1}), rv({1, 1})});
  CHECK_THROWS_AS(neighborhood_scan(AnyFamily{big}, cfg), PreconditionViolated);
}

TEST_CASE("unguarded contrast scan: full-spark PR center is stable") {
  const auto center = random_full_spark(3, 5, 4242);
  REQUIRE(certify_pr_vectors(center).verdict == Verdict::Pass);
  ScanConfig cfg;
  cfg.radius = 1e-3;
  cfg.samples = 60;
  cfg.seed = 5;
  cfg.property = Property::PhaseRetrieval;
  cfg.unguarded = true;
  const auto res = neighborhood_scan(AnyFamily{center}, cfg);
  CHECK(res.pass >= 59);  // full spark frames are dense
}

TEST_CASE("guarded scan on a subspace family") {
  // {span{e1,e3}, span{e2,e3}}: sum dim 4 < 2N-1 = 5, fails NR
  const auto fx = fixture("two_subspace_counterexample_R3");
  ScanConfig cfg;
  cfg.radius = 1e-3;
  cfg.samples = 6;
  cfg.seed = 11;
  cfg.falsifier.starts = 12;
  cfg.falsifier.max_iters = 120;
  const auto res = neighborhood_scan(AnyFamily{*fx.subspaces}, cfg);
  CHECK(res.samples == 6);
  CHECK(res.fail == 6);
}
