#include "framecert/subspaces.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace framecert {

namespace {

// Orthonormalize {P_i x} and return the distance from x to their span.
double span_distance(const std::vector<MatrixNM<double>>& projs, const Vec<double>& x) {
  std::vector<Vec<double>> q;
  for (const auto& p : projs) {
    Vec<double> v = p.apply(x);
    const double mag = norm(v);
    if (mag <= 1e-13) continue;
    for (const auto& b : q) {
      const double c = dot(v, b);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * b[j];
    }
    const double res = norm(v);
    if (res > 1e-10 * mag) q.push_back(scale(v, 1.0 / res));
  }
  Vec<double> r = x;
  for (const auto& b : q) {
    const double c = dot(r, b);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= c * b[j];
  }
  return norm(r);
}

MatrixNM<double> stacked_projections(const std::vector<MatrixNM<double>>& projs,
                                     const Vec<double>& x) {
  const std::size_t n = x.size();
  MatrixNM<double> a(n, projs.size());
  for (std::size_t j = 0; j < projs.size(); ++j) {
    const Vec<double> c = projs[j].apply(x);
    for (std::size_t i = 0; i < n; ++i) a(i, j) = c[i];
  }
  return a;
}

struct SphereResult {
  Vec<double> x;
  double value = std::numeric_limits<double>::infinity();
  int start = -1;
};

// Multi-start projected gradient descent on the unit sphere with
// central-difference gradients and step-halving line search. Deterministic
// given cfg.seed; starts are independent. Returns one converged point per
// start, in start order.
std::vector<SphereResult> sphere_minimize(std::size_t n, const FalsifierConfig& cfg,
                                          const std::function<double(const Vec<double>&)>& f) {
  std::vector<SphereResult> results;
  results.reserve(cfg.starts);
  for (int s = 0; s < cfg.starts; ++s) {
    std::mt19937_64 rng(cfg.seed * 0x100000001b3ULL + 0x9e3779b97f4a7c15ULL * (s + 1));
    std::normal_distribution<double> gauss;
    Vec<double> x(n);
    for (auto& e : x) e = gauss(rng);
    const double nx = norm(x);
    if (nx == 0)
      x[0] = 1;
    else
      x = scale(x, 1.0 / nx);
    double fx = f(x);

    for (int it = 0; it < cfg.max_iters; ++it) {
      Vec<double> g(n);
      const double h = cfg.diff_step;
      Vec<double> xt = x;
      for (std::size_t i = 0; i < n; ++i) {
        xt[i] = x[i] + h;
        const double fp = f(xt);
        xt[i] = x[i] - h;
        const double fm = f(xt);
        xt[i] = x[i];
        g[i] = (fp - fm) / (2 * h);
      }
      const double gx = dot(g, x);
      for (std::size_t i = 0; i < n; ++i) g[i] -= gx * x[i];
      if (norm(g) <= 1e-14) break;

      bool moved = false;
      double alpha = 0.5;
      for (int ls = 0; ls < 45; ++ls, alpha *= 0.5) {
        Vec<double> cand(n);
        for (std::size_t i = 0; i < n; ++i) cand[i] = x[i] - alpha * g[i];
        const double cn = norm(cand);
        if (cn == 0) continue;
        for (auto& e : cand) e /= cn;
        const double fc = f(cand);
        if (fc < fx - 1e-15) {
          x = std::move(cand);
          fx = fc;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    results.push_back(SphereResult{x, fx, s});
  }
  return results;
}

// Smallest objective wins, ties broken by start index.
const SphereResult& best_of(const std::vector<SphereResult>& rs) {
  const SphereResult* best = &rs.front();
  for (const auto& r : rs)
    if (r.value < best->value) best = &r;
  return *best;
}

std::vector<MatrixNM<double>> projection_matrices(const SubspaceFamily<double>& fam) {
  std::vector<MatrixNM<double>> out;
  out.reserve(fam.size());
  for (const auto& w : fam.subspaces) out.push_back(w.projection_matrix());
  return out;
}

// y = x - (projection of x onto span{P_i x}), exactly; nullopt when x lies
// in the span.
std::optional<Vec<Rat>> exact_span_residual(const SubspaceFamily<Rat>& fam, const Vec<Rat>& x) {
  std::vector<Vec<Rat>> independent;
  RowEchelon<Rat> ech(fam.ambient_dim);
  for (const auto& w : fam.subspaces) {
    Vec<Rat> px = w.project(x);
    if (is_zero_vec(px)) continue;
    if (ech.insert(px)) independent.push_back(std::move(px));
  }
  Vec<Rat> y = x;
  if (!independent.empty()) {
    const auto orth = gram_schmidt(independent);
    for (const auto& b : orth) {
      const Rat c = dot(b, y) / norm_sq(b);
      for (std::size_t j = 0; j < y.size(); ++j) y[j] -= c * b[j];
    }
  }
  if (is_zero_vec(y)) return std::nullopt;
  return y;
}

// Rescales y so ||y|| matches ||target|| (exactly when the norm ratio is a
// rational square, else via a rational approximation; either way the
// direction, and hence all orthogonality, is preserved exactly).
Vec<Rat> scale_to_norm_of(const Vec<Rat>& y, const Rat& target_norm_sq) {
  const Rat ratio = target_norm_sq / norm_sq(y);
  if (const auto c = exact_sqrt(ratio)) return scale(y, *c);
  const Rat c = rationalize(std::sqrt(to_double(ratio)), 1000000);
  return scale(y, c == 0 ? Rat(1) : c);
}

Vec<Rat> rationalize_vec(const Vec<double>& x, std::uint64_t max_den = 1000000) {
  Vec<Rat> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = rationalize(x[i], max_den);
  return r;
}

Certificate stage_tagged(Certificate c, const std::string& stage) {
  c.detail["stage"] = stage;
  c.method = stage + ":" + c.method;
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// witness verification

template <class T>
bool verify_pair_witness(const PairWitness<T>& pw, const SubspaceFamily<T>& fam,
                         Property property, double tol_eq, double min_gap) {
  if (pw.u.size() != fam.ambient_dim || pw.v.size() != fam.ambient_dim) return false;
  for (const auto& w : fam.subspaces) {
    const T su = norm_sq(w.project(pw.u));
    const T sv = norm_sq(w.project(pw.v));
    if constexpr (backend_traits<T>::exact) {
      if (su != sv) return false;
    } else {
      if (std::abs(std::sqrt(su) - std::sqrt(sv)) > tol_eq) return false;
    }
  }
  const double nu = std::sqrt(to_double(norm_sq(pw.u)));
  const double nv = std::sqrt(to_double(norm_sq(pw.v)));
  if (property == Property::NormRetrieval) {
    if constexpr (backend_traits<T>::exact) {
      if (norm_sq(pw.u) == norm_sq(pw.v)) return false;
    }
    return std::abs(nu - nv) >= min_gap;
  }
  // PR: u != +-v, i.e. both u - v and u + v nonzero
  const double d1 = std::sqrt(to_double(norm_sq(sub(pw.u, pw.v))));
  const double d2 = std::sqrt(to_double(norm_sq(add(pw.u, pw.v))));
  return d1 >= min_gap && d2 >= min_gap;
}

template bool verify_pair_witness<Rat>(const PairWitness<Rat>&, const SubspaceFamily<Rat>&,
                                       Property, double, double);
template bool verify_pair_witness<double>(const PairWitness<double>&,
                                          const SubspaceFamily<double>&, Property, double,
                                          double);

// ---------------------------------------------------------------------------
// lifts

VectorFamily<double> lift_to_vectors_canonical(const SubspaceFamily<double>& fam) {
  std::vector<Vec<double>> vectors;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& onb = fam.subspaces[i].orthogonal_basis();
    for (std::size_t j = 0; j < onb.size(); ++j) {
      vectors.push_back(onb[j]);
      labels.push_back(std::to_string(i + 1) + "." + std::to_string(j + 1));
    }
  }
  return VectorFamily<double>(fam.ambient_dim, std::move(vectors), std::move(labels));
}

VectorFamily<double> lift_to_vectors(const SubspaceFamily<double>& fam, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Vec<double>> vectors;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& onb = fam.subspaces[i].orthogonal_basis();
    const std::size_t k = onb.size();
    // random rotation inside W_i: orthonormalized Gaussian coefficients
    std::vector<Vec<double>> q;
    while (true) {
      std::vector<Vec<double>> raw(k, Vec<double>(k));
      for (auto& row : raw)
        for (auto& e : row) e = gauss(rng);
      try {
        q = gram_schmidt(raw);
        break;
      } catch (const DependentInput&) {
        continue;  // resample the (measure-zero) degenerate draw
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      Vec<double> v(fam.ambient_dim, 0.0);
      for (std::size_t l = 0; l < k; ++l)
        for (std::size_t c = 0; c < fam.ambient_dim; ++c) v[c] += q[j][l] * onb[l][c];
      vectors.push_back(std::move(v));
      labels.push_back(std::to_string(i + 1) + "." + std::to_string(j + 1));
    }
  }
  return VectorFamily<double>(fam.ambient_dim, std::move(vectors), std::move(labels));
}

Certificate falsify_by_lift(const SubspaceFamily<double>& fam, Property property, int trials,
                            std::uint64_t seed) {
  if (fam.sum_dim() > kMaxFamilySize)
    return Certificate::unknown("lift", {{"note", "family too large for lifted enumeration"}});
  for (int t = 0; t < trials; ++t) {
    const VectorFamily<double> lifted =
        t == 0 ? lift_to_vectors_canonical(fam) : lift_to_vectors(fam, seed + std::uint64_t(t));
    const Certificate inner = property == Property::PhaseRetrieval
                                  ? certify_pr_vectors(lifted)
                                  : certify_nr_vectors(lifted);
    if (inner.verdict == Verdict::Fail) {
      json lifted_json = json::array();
      for (const auto& v : lifted.vectors) lifted_json.push_back(v);
      json det{{"trial", t},
               {"lift_seed", t == 0 ? json(nullptr) : json(seed + std::uint64_t(t))},
               {"inner_method", inner.method},
               {"inner_detail", inner.detail},
               {"lifted_vectors", lifted_json},
               {"lifted_labels", lifted.labels}};
      return Certificate::fail(inner.method, inner.witness, det);
    }
  }
  return Certificate::unknown("lift", {{"trials", trials}});
}

// ---------------------------------------------------------------------------
// norm-retrieval sphere falsifier

namespace {

// Tries to turn a candidate point into an exactly re-verifying NR witness
// pair: rationalize x (small denominators first, so points snapping onto a
// rational degenerate stratum are caught exactly), recompute the span
// residual in exact arithmetic, and rebuild the pair.
std::optional<Certificate> try_exact_nr_witness(const SubspaceFamily<Rat>& fam,
                                                const Vec<double>& x, json det) {
  for (const std::uint64_t den : {1000ULL, 1000000ULL}) {
    const Vec<Rat> xr = rationalize_vec(x, den);
    if (is_zero_vec(xr)) continue;
    const auto y = exact_span_residual(fam, xr);
    if (!y) continue;
    const Vec<Rat> ys = scale_to_norm_of(*y, norm_sq(xr));
    try {
      PairWitness<Rat> pw = make_witness_pair(xr, ys, fam);
      if (verify_pair_witness(pw, fam, Property::NormRetrieval)) {
        det["witness_repair"] = "exact";
        return Certificate::fail("sphere-falsifier", std::move(pw), std::move(det));
      }
    } catch (const PreconditionViolated&) {
    }
  }
  return std::nullopt;
}

// Float witness from the residual of x against span{P_i x}.
std::optional<Certificate> try_float_nr_witness(const SubspaceFamily<double>& famf,
                                                const std::vector<MatrixNM<double>>& projs,
                                                const Vec<double>& x, json det) {
  try {
    std::vector<Vec<double>> cols;
    for (const auto& p : projs) {
      Vec<double> c = p.apply(x);
      if (norm(c) > 1e-13) cols.push_back(std::move(c));
    }
    Vec<double> y = x;
    if (!cols.empty()) {
      const auto orth = gram_schmidt(cols);
      for (const auto& b : orth) {
        const double c = dot(b, y);
        for (std::size_t j = 0; j < y.size(); ++j) y[j] -= c * b[j];
      }
    }
    if (norm(y) > 1e-13) {
      y = normalized(y);  // matches ||x|| = 1
      PairWitness<double> pw = make_witness_pair(x, y, famf);
      if (verify_pair_witness(pw, famf, Property::NormRetrieval)) {
        det["witness_repair"] = "float";
        return Certificate::fail("sphere-falsifier", std::move(pw), std::move(det));
      }
    }
  } catch (const PreconditionViolated&) {
  }
  return std::nullopt;
}

// Float witness from the co-kernel direction at a rank-deficient point.
std::optional<Certificate> try_float_cokernel_nr_witness(
    const SubspaceFamily<double>& famf, const std::vector<MatrixNM<double>>& projs,
    const Vec<double>& x, json det) {
  try {
    const MatrixNM<double> a = stacked_projections(projs, x);
    const SymEig eig = sym_eigen(a * a.transpose());
    Vec<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = eig.vectors(i, 0);
    PairWitness<double> pw = make_witness_pair(x, y, famf);
    if (verify_pair_witness(pw, famf, Property::NormRetrieval)) {
      det["witness_repair"] = "float-cokernel";
      return Certificate::fail("sphere-falsifier", std::move(pw), std::move(det));
    }
  } catch (const PreconditionViolated&) {
  }
  return std::nullopt;
}

// The span distance is positive on an open set only when the family cannot
// span pointwise (e.g. sum dim < N); otherwise NR violations live on the
// rank-deficient stratum {x : span{P_i x} != R^N}. The falsifier therefore
// runs two hunts: direct distance ascent, then sigma_min descent onto that
// stratum with exact witness repair.
Certificate falsify_nr_common(const SubspaceFamily<double>& famf,
                              const SubspaceFamily<Rat>* fam_exact,
                              const FalsifierConfig& cfg) {
  const std::size_t n = famf.ambient_dim;
  const auto projs = projection_matrices(famf);

  auto ascent = sphere_minimize(
      n, cfg, [&](const Vec<double>& x) { return -span_distance(projs, x); });
  const SphereResult& best_a = best_of(ascent);
  const double g_best = -best_a.value;

  json det{{"objective_best", g_best},
           {"objective", "distance from x to span{P_i x}"},
           {"best_start", best_a.start},
           {"starts", cfg.starts},
           {"x_best", best_a.x}};

  std::stable_sort(ascent.begin(), ascent.end(),
                   [](const SphereResult& a, const SphereResult& b) { return a.value < b.value; });
  for (const auto& cand : ascent) {
    if (-cand.value <= cfg.unknown_floor) break;
    if (fam_exact != nullptr)
      if (auto c = try_exact_nr_witness(*fam_exact, cand.x, det)) return *c;
    if (auto c = try_float_nr_witness(famf, projs, cand.x, det)) return *c;
  }

  // hunt the rank-deficient stratum; every near-degenerate start is a
  // repair candidate (the stratum contains non-violating points too)
  auto descent = sphere_minimize(n, cfg, [&](const Vec<double>& x) {
    return smallest_singular_value(stacked_projections(projs, x));
  });
  det["sigma_min_best"] = best_of(descent).value;
  std::stable_sort(descent.begin(), descent.end(),
                   [](const SphereResult& a, const SphereResult& b) { return a.value < b.value; });
  for (const auto& cand : descent) {
    if (cand.value >= cfg.unknown_floor) break;
    if (fam_exact != nullptr)
      if (auto c = try_exact_nr_witness(*fam_exact, cand.x, det)) return *c;
    if (auto c = try_float_cokernel_nr_witness(famf, projs, cand.x, det)) return *c;
  }

  // last repair stage: deterministic exact candidates on the degenerate
  // stratum (complete for line families)
  if (fam_exact != nullptr) {
    if (auto pw = find_nr_witness_pair_exact(*fam_exact)) {
      det["witness_repair"] = "exact-candidate";
      return Certificate::fail("sphere-falsifier", std::move(*pw), det);
    }
  }
  return Certificate::unknown("sphere-falsifier", det);
}

}  // namespace

Certificate falsify_nr_subspaces(const SubspaceFamily<Rat>& fam, const FalsifierConfig& cfg) {
  const SubspaceFamily<double> famf = to_float(fam);
  return falsify_nr_common(famf, &fam, cfg);
}

Certificate falsify_nr_subspaces(const SubspaceFamily<double>& fam, const FalsifierConfig& cfg) {
  return falsify_nr_common(fam, nullptr, cfg);
}

// ---------------------------------------------------------------------------
// phase-retrieval sphere falsifier

namespace {

Certificate falsify_pr_common(const SubspaceFamily<double>& famf,
                              const SubspaceFamily<Rat>* fam_exact,
                              const FalsifierConfig& cfg) {
  const std::size_t n = famf.ambient_dim;
  const auto projs = projection_matrices(famf);
  auto results = sphere_minimize(n, cfg, [&](const Vec<double>& x) {
    return smallest_singular_value(stacked_projections(projs, x));
  });
  const SphereResult& best = best_of(results);

  json det{{"objective_best", best.value},
           {"objective", "sigma_min of stacked [P_1 x ... P_M x]"},
           {"best_start", best.start},
           {"starts", cfg.starts},
           {"x_best", best.x}};
  if (best.value >= cfg.fail_threshold) return Certificate::unknown("sphere-falsifier", det);

  std::stable_sort(results.begin(), results.end(),
                   [](const SphereResult& a, const SphereResult& b) { return a.value < b.value; });
  for (const auto& cand : results) {
    if (cand.value >= cfg.fail_threshold) break;
    // exact repair: the rationalized x often lies exactly on the
    // degenerate stratum, giving a zero-residual witness
    if (fam_exact != nullptr) {
      for (const std::uint64_t den : {1000ULL, 1000000ULL}) {
        const Vec<Rat> xr = rationalize_vec(cand.x, den);
        if (is_zero_vec(xr)) continue;
        std::vector<Vec<Rat>> cols;
        for (const auto& w : fam_exact->subspaces) {
          Vec<Rat> px = w.project(xr);
          if (!is_zero_vec(px)) cols.push_back(std::move(px));
        }
        const auto comp = nullspace_of_rows(cols, n);
        if (comp.empty()) continue;
        const Vec<Rat> y = scale_to_norm_of(primitive_direction(comp.front()), norm_sq(xr));
        PairWitness<Rat> pw = make_witness_pair(xr, y, *fam_exact);
        if (verify_pair_witness(pw, *fam_exact, Property::PhaseRetrieval)) {
          det["witness_repair"] = "exact";
          det["objective_at_witness"] =
              smallest_singular_value(stacked_projections(projs, to_float(xr)));
          det["nr_also_violated"] = dot(xr, y) != 0;
          return Certificate::fail("sphere-falsifier", std::move(pw), det);
        }
      }
    }
    // float fallback: y = least singular direction
    try {
      const MatrixNM<double> a = stacked_projections(projs, cand.x);
      const SymEig eig = sym_eigen(a * a.transpose());
      Vec<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = eig.vectors(i, 0);
      PairWitness<double> pw = make_witness_pair(cand.x, y, famf);
      if (verify_pair_witness(pw, famf, Property::PhaseRetrieval)) {
        det["witness_repair"] = "float";
        return Certificate::fail("sphere-falsifier", std::move(pw), det);
      }
    } catch (const PreconditionViolated&) {
    }
  }
  det["note"] = "candidate found but witness did not re-verify";
  return Certificate::unknown("sphere-falsifier", det);
}

}  // namespace

Certificate falsify_pr_subspaces(const SubspaceFamily<Rat>& fam, const FalsifierConfig& cfg) {
  const SubspaceFamily<double> famf = to_float(fam);
  return falsify_pr_common(famf, &fam, cfg);
}

Certificate falsify_pr_subspaces(const SubspaceFamily<double>& fam, const FalsifierConfig& cfg) {
  return falsify_pr_common(fam, nullptr, cfg);
}

// ---------------------------------------------------------------------------
// exact witness search

std::optional<PairWitness<Rat>> find_nr_witness_pair_exact(const SubspaceFamily<Rat>& fam) {
  const std::size_t n = fam.ambient_dim;
  const std::size_t m = fam.size();
  std::vector<Vec<Rat>> candidates;
  for (std::size_t i = 0; i < n; ++i) candidates.push_back(unit_vector<Rat>(n, i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec<Rat> p = unit_vector<Rat>(n, i), mv = unit_vector<Rat>(n, i);
      p[j] = Rat(1);
      mv[j] = Rat(-1);
      candidates.push_back(std::move(p));
      candidates.push_back(std::move(mv));
    }
  }
  candidates.emplace_back(n, Rat(1));  // all-ones
  // basis vectors of [sum_{i in S} W_i]^perp over index subsets S: for line
  // families these candidates are complete (a witness x has P_i x = 0
  // exactly on some S, and then some complement basis vector of S works)
  if (m <= 12) {
    for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
      std::vector<Vec<Rat>> stacked;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1)
          stacked.insert(stacked.end(), fam.subspaces[i].basis().begin(),
                         fam.subspaces[i].basis().end());
      for (const auto& b : nullspace_of_rows(stacked, n))
        candidates.push_back(primitive_direction(b));
    }
  } else {
    for (const auto& w : fam.subspaces)
      for (const auto& b : orthogonal_complement_basis(w))
        candidates.push_back(primitive_direction(b));
  }
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int t = 0; t < 60; ++t) {
    Vec<Rat> x(n);
    for (auto& e : x) e = Rat(small(rng));
    if (!is_zero_vec(x)) candidates.push_back(std::move(x));
  }

  for (const auto& x : candidates) {
    if (is_zero_vec(x)) continue;
    const auto y = exact_span_residual(fam, x);
    if (!y) continue;
    // <x, y> = ||y||^2 > 0, so the pair always violates NR
    const Vec<Rat> ys = scale_to_norm_of(*y, norm_sq(x));
    PairWitness<Rat> pw = make_witness_pair(x, ys, fam);
    if (verify_pair_witness(pw, fam, Property::NormRetrieval)) return pw;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// exact classification (certify_nr_exact_cases)

namespace {

Certificate fail_with_pair_or(const SubspaceFamily<Rat>& fam, const std::string& method,
                              Witness fallback, json det) {
  if (auto pw = find_nr_witness_pair_exact(fam)) {
    det["witness_kind"] = "pair";
    return Certificate::fail(method, std::move(*pw), std::move(det));
  }
  det["witness_kind"] = "structural";
  return Certificate::fail(method, std::move(fallback), std::move(det));
}

// Scans subsets for sum_{i in S} P_i = lambda I: a float Gray-code sweep
// proposes candidates, each verified in exact arithmetic before a pass.
std::optional<std::pair<std::vector<int>, Rat>> tight_fusion_subset(
    const SubspaceFamily<Rat>& fam) {
  const std::size_t m = fam.size();
  const std::size_t n = fam.ambient_dim;
  std::vector<MatrixNM<Rat>> exact;
  exact.reserve(m);
  for (const auto& w : fam.subspaces) exact.push_back(w.projection_matrix());

  auto verify_exact = [&](std::size_t mask) -> std::optional<Rat> {
    MatrixNM<Rat> s(n, n);
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) s = s + exact[i];
    Rat trace{};
    for (std::size_t i = 0; i < n; ++i) trace += s(i, i);
    const Rat lambda = trace / Rat(static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (s(i, j) != (i == j ? lambda : Rat(0))) return std::nullopt;
    return lambda;
  };

  if (m > 20) {  // beyond subset-scan scale: full family only
    const std::size_t full = m >= 64 ? 0 : (std::size_t(1) << m) - 1;
    if (full != 0) {
      if (const auto lam = verify_exact(full)) {
        std::vector<int> idx(m);
        for (std::size_t i = 0; i < m; ++i) idx[i] = static_cast<int>(i) + 1;
        return std::make_pair(idx, *lam);
      }
    }
    return std::nullopt;
  }

  std::vector<MatrixNM<double>> pf;
  pf.reserve(m);
  for (const auto& p : exact) pf.push_back(to_float(p));

  MatrixNM<double> cur(n, n);
  std::size_t gray = 0;
  for (std::size_t g = 1; g < (std::size_t(1) << m); ++g) {
    const std::size_t next = g ^ (g >> 1);
    const std::size_t flipped = next ^ gray;
    std::size_t bit = 0;
    while (!(flipped >> bit & 1)) ++bit;
    const double sign = (next & flipped) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cur(i, j) += sign * pf[bit](i, j);
    gray = next;

    double trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += cur(i, i);
    const double lambda = trace / static_cast<double>(n);
    double dev = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        dev = std::max(dev, std::abs(cur(i, j) - (i == j ? lambda : 0.0)));
    if (dev > 1e-9 * std::max(1.0, std::abs(lambda))) continue;

    if (const auto lam = verify_exact(gray)) {
      std::vector<int> idx;
      for (std::size_t i = 0; i < m; ++i)
        if (gray >> i & 1) idx.push_back(static_cast<int>(i) + 1);
      return std::make_pair(idx, *lam);
    }
  }
  return std::nullopt;
}

// Canonical three-hyperplane triple, up to global rotation and scaling:
// two orthogonal normals and a third that balances them.
std::optional<std::vector<int>> canonical_triple_subset(const std::vector<Vec<Rat>>& normals) {
  const std::size_t m = normals.size();
  auto balanced = [&](std::size_t a, std::size_t b, std::size_t c) -> bool {
    if (dot(normals[a], normals[b]) != 0) return false;
    const Rat naa = norm_sq(normals[a]);
    const Rat nbb = norm_sq(normals[b]);
    const Rat alpha = dot(normals[c], normals[a]) / naa;
    const Rat beta = dot(normals[c], normals[b]) / nbb;
    if (alpha == 0 || beta == 0) return false;
    // n_c must lie exactly in span{n_a, n_b}
    Vec<Rat> rec(normals[c].size(), Rat(0));
    for (std::size_t i = 0; i < rec.size(); ++i)
      rec[i] = alpha * normals[a][i] + beta * normals[b][i];
    if (rec != normals[c]) return false;
    return alpha * alpha * naa == beta * beta * nbb;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        const std::size_t tri[3] = {i, j, k};
        for (int c = 0; c < 3; ++c) {
          const std::size_t a = tri[(c + 1) % 3], b = tri[(c + 2) % 3];
          if (balanced(a, b, tri[c]))
            return std::vector<int>{static_cast<int>(i) + 1, static_cast<int>(j) + 1,
                                    static_cast<int>(k) + 1};
        }
      }
  return std::nullopt;
}

}  // namespace

Certificate certify_nr_exact_cases(const SubspaceFamily<Rat>& fam) {
  const std::size_t n = fam.ambient_dim;
  const std::size_t m = fam.size();
  const std::size_t sum = fam.sum_dim();
  if (m == 0) throw PreconditionViolated("empty subspace family");

  // (a) too few dimensions to span
  if (sum < n) {
    std::vector<Vec<Rat>> stacked;
    for (const auto& w : fam.subspaces)
      stacked.insert(stacked.end(), w.basis().begin(), w.basis().end());
    const auto comp = nullspace_of_rows(stacked, n);
    const Vec<Rat> y = primitive_direction(comp.front());
    // P_i y = 0 for every i, so (2y, 0) is an exact witness pair
    PairWitness<Rat> pw = make_witness_pair(y, y, fam);
    return Certificate::fail("dimension-count", std::move(pw),
                             {{"sum_dim", sum}, {"ambient_dim", n}});
  }

  // (b) sum of dimensions exactly N: NR iff pairwise orthogonal
  if (sum == n) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (const auto& bi : fam.subspaces[i].basis())
          for (const auto& bj : fam.subspaces[j].basis()) {
            const Rat ip = dot(bi, bj);
            if (ip == 0) continue;
            json det{{"sum_dim", sum},
                     {"nonorthogonal_pair", {static_cast<int>(i) + 1, static_cast<int>(j) + 1}},
                     {"inner_product", rational_to_string(ip)}};
            return fail_with_pair_or(
                fam, "pair-orth",
                IndexListWitness{{static_cast<int>(i) + 1, static_cast<int>(j) + 1}}, det);
          }
    return Certificate::pass("pair-orth", {{"sum_dim", sum}});
  }

  // (c) two proper subspaces: NR iff they are orthogonal complements
  if (m == 2 && fam.subspaces[0].dim() < n && fam.subspaces[1].dim() < n) {
    const auto comp = orthogonal_complement(fam.subspaces[0]);
    if (equal_span(fam.subspaces[1], comp)) {
      return Certificate::pass("two-subspace", {{"dims", {fam.subspaces[0].dim(),
                                                          fam.subspaces[1].dim()}}});
    }
    json det{{"dims", {fam.subspaces[0].dim(), fam.subspaces[1].dim()}},
             {"intersection_dim", intersection_dim(fam.subspaces[0], fam.subspaces[1])}};
    return fail_with_pair_or(fam, "two-subspace", IndexListWitness{{1, 2}}, det);
  }

  // (d) hyperplane families
  bool all_hyperplanes = n >= 2;
  for (const auto& w : fam.subspaces) all_hyperplanes &= w.dim() == n - 1;
  if (all_hyperplanes) {
    std::vector<Vec<Rat>> normals;
    for (const auto& w : fam.subspaces)
      normals.push_back(primitive_direction(orthogonal_complement_basis(w).front()));
    const bool independent = rank_of_vectors(normals, n) == m;

    if (independent && m == n - 1) {
      json det{{"normal_count", m}, {"ambient_dim", n}};
      std::vector<int> all(m);
      for (std::size_t i = 0; i < m; ++i) all[i] = static_cast<int>(i) + 1;
      return fail_with_pair_or(fam, "thm-Ca1", IndexListWitness{all}, det);
    }
    if (independent && m == n) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
          if (dot(normals[i], normals[j]) != 0) {
            json det{{"nonorthogonal_normals",
                      {static_cast<int>(i) + 1, static_cast<int>(j) + 1}},
                     {"inner_product", rational_to_string(dot(normals[i], normals[j]))}};
            return fail_with_pair_or(
                fam, "thm-M",
                IndexListWitness{{static_cast<int>(i) + 1, static_cast<int>(j) + 1}}, det);
          }
      // orthonormal normals: falls through to the tight-fusion case below
    }
    if (const auto tri = canonical_triple_subset(normals)) {
      return Certificate::pass("canonical-triple", {{"triple", *tri}});
    }
  }

  // (e) tight fusion: some subfamily sums to lambda I
  if (const auto tf = tight_fusion_subset(fam)) {
    return Certificate::pass("tight-fusion", {{"subset", tf->first},
                                              {"lambda", rational_to_string(tf->second)}});
  }

  return Certificate::unknown("exact-cases");
}

// ---------------------------------------------------------------------------
// pipelines

Certificate certify_nr_subspaces(const SubspaceFamily<Rat>& fam, const FalsifierConfig& cfg) {
  Certificate ec = certify_nr_exact_cases(fam);
  if (ec.verdict != Verdict::Unknown) return stage_tagged(std::move(ec), "exact");

  const SubspaceFamily<double> famf = to_float(fam);
  Certificate lc = falsify_by_lift(famf, Property::NormRetrieval, cfg.lift_trials, cfg.seed);
  if (lc.verdict == Verdict::Fail) return stage_tagged(std::move(lc), "lift");

  Certificate sc = falsify_nr_subspaces(fam, cfg);
  if (sc.verdict == Verdict::Fail) return stage_tagged(std::move(sc), "sphere");

  json det{{"stages", {"exact", "lift", "sphere"}},
           {"sphere_detail", sc.detail}};
  return Certificate::unknown("pipeline", det);
}

Certificate certify_nr_subspaces(const SubspaceFamily<double>& fam, const FalsifierConfig& cfg) {
  const std::size_t n = fam.ambient_dim;
  if (fam.sum_dim() < n) {
    std::vector<Vec<double>> stacked;
    for (const auto& w : fam.subspaces)
      stacked.insert(stacked.end(), w.basis().begin(), w.basis().end());
    const auto comp = nullspace_of_rows(stacked, n);
    const Vec<double> y = normalized(comp.front());
    PairWitness<double> pw = make_witness_pair(y, y, fam);
    Certificate c = Certificate::fail("dimension-count", std::move(pw),
                                      {{"sum_dim", fam.sum_dim()}, {"ambient_dim", n}});
    return stage_tagged(std::move(c), "exact");
  }
  Certificate lc = falsify_by_lift(fam, Property::NormRetrieval, cfg.lift_trials, cfg.seed);
  if (lc.verdict == Verdict::Fail) return stage_tagged(std::move(lc), "lift");
  Certificate sc = falsify_nr_subspaces(fam, cfg);
  if (sc.verdict == Verdict::Fail) return stage_tagged(std::move(sc), "sphere");
  return Certificate::unknown("pipeline", {{"stages", {"lift", "sphere"}},
                                           {"sphere_detail", sc.detail}});
}

Certificate certify_pr_subspaces(const SubspaceFamily<Rat>& fam, const FalsifierConfig& cfg) {
  bool all_lines = true;
  for (const auto& w : fam.subspaces) all_lines &= w.dim() == 1;
  if (all_lines) {
    // T21: a line family does PR iff its direction vectors do
    std::vector<Vec<Rat>> dirs;
    for (const auto& w : fam.subspaces) dirs.push_back(primitive_direction(w.basis().front()));
    Certificate c = certify_pr_vectors(VectorFamily<Rat>(fam.ambient_dim, std::move(dirs)));
    return stage_tagged(std::move(c), "exact");
  }
  const SubspaceFamily<double> famf = to_float(fam);
  Certificate lc = falsify_by_lift(famf, Property::PhaseRetrieval, cfg.lift_trials, cfg.seed);
  if (lc.verdict == Verdict::Fail) return stage_tagged(std::move(lc), "lift");
  Certificate sc = falsify_pr_subspaces(fam, cfg);
  if (sc.verdict == Verdict::Fail) return stage_tagged(std::move(sc), "sphere");
  return Certificate::unknown("pipeline", {{"stages", {"lift", "sphere"}},
                                           {"sphere_detail", sc.detail}});
}

Certificate certify_pr_subspaces(const SubspaceFamily<double>& fam, const FalsifierConfig& cfg) {
  bool all_lines = true;
  for (const auto& w : fam.subspaces) all_lines &= w.dim() == 1;
  if (all_lines) {
    std::vector<Vec<double>> dirs;
    for (const auto& w : fam.subspaces) dirs.push_back(w.basis().front());
    Certificate c = certify_pr_vectors(VectorFamily<double>(fam.ambient_dim, std::move(dirs)));
    return stage_tagged(std::move(c), "exact");
  }
  Certificate lc = falsify_by_lift(fam, Property::PhaseRetrieval, cfg.lift_trials, cfg.seed);
  if (lc.verdict == Verdict::Fail) return stage_tagged(std::move(lc), "lift");
  Certificate sc = falsify_pr_subspaces(fam, cfg);
  if (sc.verdict == Verdict::Fail) return stage_tagged(std::move(sc), "sphere");
  return Certificate::unknown("pipeline", {{"stages", {"lift", "sphere"}},
                                           {"sphere_detail", sc.detail}});
}

}  // namespace framecert
