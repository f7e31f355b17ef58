#include "framecert/perturb.hpp"

#include <cmath>
#include <random>

namespace framecert {

std::pair<double, double> normalize_perturbation_bound(const Vec<double>& x,
                                                       const Vec<double>& y) {
  if (std::abs(norm(x) - 1.0) > 1e-12) throw PreconditionViolated("x must be a unit vector");
  if (norm(y) == 0) throw ZeroVector("y must be nonzero");
  const double lhs = norm(sub(normalized(y), x));
  const double rhs = 2.0 * norm(sub(y, x));
  return {lhs, rhs};
}

StabilityReport stable_gram_schmidt(const std::vector<Vec<double>>& xs,
                                    const std::vector<Vec<double>>& ys, double delta) {
  if (xs.size() != ys.size() || xs.empty())
    throw DimensionMismatch("stable_gram_schmidt: size mismatch");
  const std::size_t p = xs.size();
  for (std::size_t i = 0; i < p; ++i)
    if (norm(sub(ys[i], xs[i])) > delta)
      throw PreconditionViolated("stable_gram_schmidt: perturbation exceeds delta");

  std::vector<Vec<double>> zs;
  try {
    zs = gram_schmidt(ys, 1e-12);
  } catch (const DependentInput&) {
    throw DependentPerturbation("perturbed vectors are linearly dependent");
  }

  StabilityReport rep;
  rep.delta = delta;
  double c_sum = 0;
  for (std::size_t k = 0; k < p; ++k) {
    const double ck = k == 0 ? 2.0 : 2.0 * (static_cast<double>(k + 1) + c_sum);
    c_sum += ck;
    rep.per_vector_bounds.push_back(ck * delta);
    rep.per_vector_errors.push_back(norm(sub(zs[k], xs[k])));
    rep.constant_C = ck;  // the recurrence is increasing; last = max
  }
  rep.epsilon = rep.constant_C * delta;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const double want = i == j ? 1.0 : 0.0;
      rep.orthonormality_residual =
          std::max(rep.orthonormality_residual, std::abs(dot(zs[i], zs[j]) - want));
    }
  return rep;
}

Certificate dim_preserved_under_projection_distance(const Subspace<double>& p,
                                                    const Subspace<double>& q) {
  if (p.ambient_dim() != q.ambient_dim())
    throw DimensionMismatch("projection pair: ambient dims differ");
  const double nrm = sym_operator_norm(p.projection_matrix() - q.projection_matrix());
  json det{{"operator_norm", nrm}, {"dim_p", p.dim()}, {"dim_q", q.dim()}};
  if (nrm < 1.0 - 1e-9) {
    if (p.dim() != q.dim())
      throw Error("lem_dim violated: ||P-Q|| < 1 with unequal dimensions");
    return Certificate::pass("dim-preservation", det);
  }
  det["note"] = "norm not below 1; lemma not applicable";
  return Certificate::unknown("dim-preservation", det);
}

// ---------------------------------------------------------------------------
// neighborhood scans

namespace {

VectorFamily<double> perturb_vectors(const VectorFamily<double>& f, double radius,
                                     std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // Gaussian directions scaled so that sum_i ||r_i|| < radius
  std::vector<Vec<double>> rs;
  double total = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    Vec<double> r(f.ambient_dim);
    for (auto& e : r) e = gauss(rng);
    rs.push_back(r);
    total += norm(r);
  }
  const double target = radius * unif(rng);
  const double factor = total > 0 ? target / total : 0.0;
  std::vector<Vec<double>> out;
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(add(f.vectors[i], scale(rs[i], factor)));
  return VectorFamily<double>(f.ambient_dim, std::move(out), f.labels);
}

// Perturbs each subspace basis and re-projects, rejection-sampling on
// ||Q_i - P_i|| < radius.
SubspaceFamily<double> perturb_subspaces(const SubspaceFamily<double>& fam, double radius,
                                         std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<Subspace<double>> out;
  for (const auto& w : fam.subspaces) {
    const MatrixNM<double> p = w.projection_matrix();
    for (int attempt = 0;; ++attempt) {
      if (attempt > 200) throw GenerationFailed("projection perturbation rejection exceeded");
      double scale_try = radius * 0.5;
      std::vector<Vec<double>> basis;
      for (const auto& b : w.basis()) {
        Vec<double> r(b.size());
        for (auto& e : r) e = gauss(rng);
        basis.push_back(add(b, scale(r, scale_try / std::max(1.0, norm(r)))));
      }
      try {
        Subspace<double> cand = Subspace<double>::from_basis(fam.ambient_dim, basis);
        if (sym_operator_norm(cand.projection_matrix() - p) < radius) {
          out.push_back(std::move(cand));
          break;
        }
      } catch (const DependentInput&) {
      }
    }
  }
  return SubspaceFamily<double>(fam.ambient_dim, std::move(out));
}

struct CenterInfo {
  std::size_t ambient_dim;
  std::size_t weight;  // M for vectors, sum dim for subspaces
  bool is_vectors;
};

CenterInfo center_info(const AnyFamily& center) {
  return std::visit(
      [](const auto& f) -> CenterInfo {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, VectorFamily<Rat>> ||
                      std::is_same_v<F, VectorFamily<double>>) {
          return {f.ambient_dim, f.size(), true};
        } else {
          return {f.ambient_dim, f.sum_dim(), false};
        }
      },
      center);
}

VectorFamily<double> center_vectors_float(const AnyFamily& center) {
  if (const auto* vr = std::get_if<VectorFamily<Rat>>(&center)) return to_float(*vr);
  return std::get<VectorFamily<double>>(center);
}

SubspaceFamily<double> center_subspaces_float(const AnyFamily& center) {
  if (const auto* sr = std::get_if<SubspaceFamily<Rat>>(&center)) return to_float(*sr);
  return std::get<SubspaceFamily<double>>(center);
}

Verdict center_nr_verdict(const AnyFamily& center, const FalsifierConfig& cfg) {
  return std::visit(
      [&](const auto& f) -> Verdict {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, VectorFamily<Rat>> ||
                      std::is_same_v<F, VectorFamily<double>>) {
          return certify_nr_vectors(f).verdict;
        } else {
          return certify_nr_subspaces(f, cfg).verdict;
        }
      },
      center);
}

}  // namespace

ScanResult neighborhood_scan(const AnyFamily& center, const ScanConfig& cfg) {
  const CenterInfo info = center_info(center);

  if (!cfg.unguarded) {
    if (cfg.property != Property::NormRetrieval)
      throw PreconditionViolated("guarded scan supports the NR property only");
    if (info.weight >= 2 * info.ambient_dim - 1)
      throw PreconditionViolated("guarded scan requires M (or sum dim) < 2N-1");
    if (center_nr_verdict(center, cfg.falsifier) != Verdict::Fail)
      throw PreconditionViolated("guarded scan requires a center that verifiably fails NR");
  }

  ScanResult res;
  res.samples = cfg.samples;
  res.radius = cfg.radius;
  res.seed = cfg.seed;

  for (int s = 0; s < cfg.samples; ++s) {
    const std::uint64_t sample_seed = cfg.seed + 0x9e3779b97f4a7c15ULL * (s + 1);
    std::mt19937_64 rng(sample_seed);
    Verdict v;
    if (info.is_vectors) {
      const VectorFamily<double> sample =
          perturb_vectors(center_vectors_float(center), cfg.radius, rng);
      v = cfg.property == Property::NormRetrieval ? certify_nr_vectors(sample).verdict
                                                  : certify_pr_vectors(sample).verdict;
    } else {
      const SubspaceFamily<double> sample =
          perturb_subspaces(center_subspaces_float(center), cfg.radius, rng);
      FalsifierConfig fcfg = cfg.falsifier;
      fcfg.seed = sample_seed;
      v = cfg.property == Property::NormRetrieval ? certify_nr_subspaces(sample, fcfg).verdict
                                                  : certify_pr_subspaces(sample, fcfg).verdict;
    }
    switch (v) {
      case Verdict::Fail: ++res.fail; break;
      case Verdict::Pass: ++res.pass; break;
      case Verdict::Unknown: ++res.unknown; break;
    }
    if (v != Verdict::Fail && !res.first_nonfail)
      res.first_nonfail = FirstNonFail{s, sample_seed, to_string(v)};
  }
  return res;
}

}  // namespace framecert
