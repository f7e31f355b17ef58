#include "framecert/gen.hpp"

#include <random>

namespace framecert {

namespace {

MatrixNM<Rat> inverse(const MatrixNM<Rat>& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("inverse: matrix must be square");
  MatrixNM<Rat> m = a;
  MatrixNM<Rat> inv = MatrixNM<Rat>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) throw DependentInput("inverse: matrix is singular");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const Rat p = m(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const Rat c = m(i, col);
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= c * m(col, j);
        inv(i, j) -= c * inv(col, j);
      }
    }
  }
  return inv;
}

json rat_vec_json(const Vec<Rat>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_to_string(x));
  return a;
}

}  // namespace

MatrixNM<Rat> random_rational_rotation(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  MatrixNM<Rat> s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rat e(num(rng), den(rng));
      s(i, j) = e;
      s(j, i) = -e;
    }
  const MatrixNM<Rat> eye = MatrixNM<Rat>::identity(n);
  return (eye - s) * inverse(eye + s);
}

VectorFamily<Rat> random_full_spark(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < n) throw FamilyTooSmall("random_full_spark needs M >= N");
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * attempt);
    std::normal_distribution<double> gauss;
    std::vector<Vec<Rat>> vs;
    for (std::size_t i = 0; i < m; ++i) {
      Vec<Rat> v(n);
      for (auto& e : v) e = rationalize(gauss(rng), 1000);
      if (is_zero_vec(v)) break;
      vs.push_back(std::move(v));
    }
    if (vs.size() != m) continue;
    VectorFamily<Rat> f(n, std::move(vs));
    if (is_full_spark(f)) return f;
  }
  throw GenerationFailed("random_full_spark: no full-spark family in 100 attempts");
}

std::pair<VectorFamily<Rat>, SubspaceFamily<Rat>> two_basis_construction(std::size_t n,
                                                                         std::uint64_t seed) {
  if (n < 2) throw DimensionMismatch("two_basis_construction needs N >= 2");
  for (int attempt = 0; attempt < 100; ++attempt) {
    const MatrixNM<Rat> q = random_rational_rotation(n, seed + 0x9e3779b97f4a7c15ULL * attempt);
    std::vector<Vec<Rat>> vs;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      vs.push_back(unit_vector<Rat>(n, i));
      labels.push_back("e" + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      vs.push_back(q.col(i));
      labels.push_back("psi" + std::to_string(i + 1));
    }
    VectorFamily<Rat> f(n, std::move(vs), std::move(labels));
    if (!is_full_spark(f)) continue;
    std::vector<Vec<Rat>> normals;
    for (const auto& v : f.vectors) normals.push_back(v);
    return {f, hyperplane_family(n, normals)};
  }
  throw GenerationFailed("two_basis_construction: no full-spark union in 100 rotations");
}

std::vector<std::string> fixture_names() {
  return {"two_subspace_counterexample_R3", "invertible_op_counterexample_R3",
          "canonical_three_hyperplanes", "two_basis_construction",
          "proof_witness_two_subspaces"};
}

Fixture fixture(const std::string& name, std::size_t n, std::uint64_t seed) {
  Fixture fx;
  fx.name = name;

  if (name == "two_subspace_counterexample_R3") {
    // W1 = span{e1, e3}, W2 = span{e2, e3}; x = (0,0,1), y = (1,1,0) have
    // equal projection norms but different norms.
    std::vector<Subspace<Rat>> subs{
        Subspace<Rat>::from_basis(3, {unit_vector<Rat>(3, 0), unit_vector<Rat>(3, 2)}),
        Subspace<Rat>::from_basis(3, {unit_vector<Rat>(3, 1), unit_vector<Rat>(3, 2)})};
    fx.subspaces = SubspaceFamily<Rat>(3, std::move(subs));
    fx.detail = {{"x", rat_vec_json({Rat(0), Rat(0), Rat(1)})},
                 {"y", rat_vec_json({Rat(1), Rat(1), Rat(0)})},
                 {"projection_norms_sq", {1, 1, 1, 1}},
                 {"norm_sq_x", 1},
                 {"norm_sq_y", 2}};
    return fx;
  }

  if (name == "invertible_op_counterexample_R3") {
    // Orthogonal pair spanning W; their images under projection onto
    // span{e1, e2} are no longer orthogonal. Stored as the unnormalized
    // rational directions of the printed unit vectors.
    const Vec<Rat> u1{Rat(1), Rat(0), Rat(1)};
    const Vec<Rat> u2{Rat(-1), Rat(2), Rat(1)};
    fx.vectors = VectorFamily<Rat>(3, {u1, u2}, {"u1", "u2"});
    fx.detail = {{"projection_onto", {"e1", "e2"}},
                 {"projected_u1", rat_vec_json({Rat(1), Rat(0), Rat(0)})},
                 {"projected_u2", rat_vec_json({Rat(-1), Rat(2), Rat(0)})},
                 {"projected_inner_product", -1},
                 {"u1_dot_u2", 0}};
    return fx;
  }

  if (name == "canonical_three_hyperplanes") {
    const std::size_t dim = n == 0 ? 3 : n;
    if (dim < 2) throw DataError("canonical_three_hyperplanes needs N >= 2");
    Vec<Rat> n3(dim, Rat(0));
    n3[0] = Rat(1);
    n3[1] = Rat(-1);
    const std::vector<Vec<Rat>> normals{unit_vector<Rat>(dim, 0), unit_vector<Rat>(dim, 1), n3};
    fx.subspaces = hyperplane_family(dim, normals);
    fx.detail = {{"normals", {"e1", "e2", "(e1-e2)/sqrt(2) stored as e1-e2"}},
                 {"ambient_dim", dim}};
    return fx;
  }

  if (name == "two_basis_construction") {
    const std::size_t dim = n == 0 ? 3 : n;
    auto [vecs, comps] = two_basis_construction(dim, seed);
    fx.vectors = std::move(vecs);
    fx.subspaces = std::move(comps);
    fx.detail = {{"ambient_dim", dim}, {"seed", seed}};
    return fx;
  }

  if (name == "proof_witness_two_subspaces") {
    const std::size_t dim = n == 0 ? 3 : n;
    if (dim < 3) throw DataError("proof_witness_two_subspaces needs N >= 3");
    // W1 = span{e1, e2}, W2 = span{e1, e3}: intersection span{e1},
    // witness x = 2 e1 + e2 + e3, y = e1 + 2 e2 + 2 e3.
    std::vector<Subspace<Rat>> subs{
        Subspace<Rat>::from_basis(dim, {unit_vector<Rat>(dim, 0), unit_vector<Rat>(dim, 1)}),
        Subspace<Rat>::from_basis(dim, {unit_vector<Rat>(dim, 0), unit_vector<Rat>(dim, 2)})};
    fx.subspaces = SubspaceFamily<Rat>(dim, std::move(subs));
    Vec<Rat> x(dim, Rat(0)), y(dim, Rat(0));
    x[0] = Rat(2); x[1] = Rat(1); x[2] = Rat(1);
    y[0] = Rat(1); y[1] = Rat(2); y[2] = Rat(2);
    fx.detail = {{"x", rat_vec_json(x)},
                 {"y", rat_vec_json(y)},
                 {"projection_norms_sq", {5, 5, 5, 5}},
                 {"norm_sq_x", 6},
                 {"norm_sq_y", 9}};
    return fx;
  }

  throw UnknownFixture("unknown fixture: " + name);
}

}  // namespace framecert
