#include "framecert/io.hpp"

#include <cmath>

namespace framecert {

namespace {

Rat entry_to_rat(const json& e) {
  if (e.is_string()) return parse_rational(e.get<std::string>());
  if (e.is_number_integer()) return Rat(e.get<long long>());
  if (e.is_number_float()) return rat_from_double_exact(e.get<double>());
  throw DataError("family entry must be a number or a rational string");
}

double entry_to_double(const json& e) {
  if (e.is_string()) return to_double(parse_rational(e.get<std::string>()));
  if (e.is_number()) return e.get<double>();
  throw DataError("family entry must be a number or a rational string");
}

template <class T>
Vec<T> parse_vec(const json& arr, std::size_t n) {
  if (!arr.is_array() || arr.size() != n)
    throw DataError("vector entry has wrong length");
  Vec<T> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if constexpr (backend_traits<T>::exact)
      v[i] = entry_to_rat(arr[i]);
    else
      v[i] = entry_to_double(arr[i]);
  }
  return v;
}

json rat_vec_to_json(const Vec<Rat>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_to_string(x));
  return a;
}

json rat_list_to_json(const std::vector<Rat>& v) { return rat_vec_to_json(v); }

template <class T>
json vectors_doc(const VectorFamily<T>& f, const char* backend) {
  json entries = json::array();
  for (const auto& v : f.vectors) {
    if constexpr (backend_traits<T>::exact)
      entries.push_back(rat_vec_to_json(v));
    else
      entries.push_back(json(v));
  }
  json doc{{"ambient_dim", f.ambient_dim},
           {"kind", "vectors"},
           {"backend", backend},
           {"entries", entries}};
  if (!f.labels.empty()) doc["labels"] = f.labels;
  return doc;
}

template <class T>
json subspaces_doc(const SubspaceFamily<T>& f, const char* backend) {
  json entries = json::array();
  for (const auto& w : f.subspaces) {
    json basis = json::array();
    for (const auto& b : w.basis()) {
      if constexpr (backend_traits<T>::exact)
        basis.push_back(rat_vec_to_json(b));
      else
        basis.push_back(json(b));
    }
    entries.push_back(json{{"basis", basis}});
  }
  return json{{"ambient_dim", f.ambient_dim},
              {"kind", "subspaces"},
              {"backend", backend},
              {"entries", entries}};
}

}  // namespace

ParsedFamily parse_family_document(const json& doc) {
  if (!doc.is_object()) throw DataError("family document must be a JSON object");
  if (!doc.contains("ambient_dim") || !doc["ambient_dim"].is_number_integer())
    throw DataError("family document needs integer ambient_dim");
  const auto n = doc["ambient_dim"].get<long long>();
  if (n < 1 || n > 64) throw DataError("ambient_dim out of range [1, 64]");
  const std::string kind = doc.value("kind", "vectors");
  const std::string backend = doc.value("backend", "exact");
  if (backend != "exact" && backend != "float") throw DataError("backend must be exact or float");
  if (!doc.contains("entries") || !doc["entries"].is_array() || doc["entries"].empty())
    throw DataError("family document needs a nonempty entries array");
  const auto& entries = doc["entries"];

  std::vector<std::string> labels;
  if (doc.contains("labels")) labels = doc["labels"].get<std::vector<std::string>>();

  ParsedFamily out;
  out.backend = backend == "exact" ? Backend::Exact : Backend::Float64;

  if (kind == "vectors") {
    if (out.backend == Backend::Exact) {
      std::vector<Vec<Rat>> vs;
      for (const auto& e : entries) vs.push_back(parse_vec<Rat>(e, n));
      out.family = VectorFamily<Rat>(n, std::move(vs), labels);
    } else {
      std::vector<Vec<double>> vs;
      for (const auto& e : entries) vs.push_back(parse_vec<double>(e, n));
      out.family = VectorFamily<double>(n, std::move(vs), labels);
    }
    return out;
  }
  if (kind == "subspaces") {
    auto parse_subs = [&](auto tag) {
      using T = decltype(tag);
      std::vector<Subspace<T>> subs;
      for (const auto& e : entries) {
        if (!e.is_object() || !e.contains("basis") || !e["basis"].is_array() ||
            e["basis"].empty())
          throw DataError("subspace entry needs a nonempty basis array");
        std::vector<Vec<T>> basis;
        for (const auto& b : e["basis"]) basis.push_back(parse_vec<T>(b, n));
        try {
          subs.push_back(Subspace<T>::from_basis(n, std::move(basis)));
        } catch (const DependentInput&) {
          throw DataError("subspace basis vectors are linearly dependent");
        }
      }
      return SubspaceFamily<T>(static_cast<std::size_t>(n), std::move(subs));
    };
    if (out.backend == Backend::Exact)
      out.family = parse_subs(Rat{});
    else
      out.family = parse_subs(double{});
    return out;
  }
  throw DataError("kind must be vectors or subspaces");
}

json family_to_json(const AnyFamily& fam, Backend backend) {
  const char* b = backend == Backend::Exact ? "exact" : "float";
  return std::visit(
      [&](const auto& f) -> json {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, VectorFamily<Rat>> ||
                      std::is_same_v<F, VectorFamily<double>>)
          return vectors_doc(f, b);
        else
          return subspaces_doc(f, b);
      },
      fam);
}

json family_to_json(const ParsedFamily& fam) { return family_to_json(fam.family, fam.backend); }

json fixture_to_json(const Fixture& fx) {
  json doc;
  if (fx.vectors) {
    doc = vectors_doc(*fx.vectors, "exact");
  } else if (fx.subspaces) {
    doc = subspaces_doc(*fx.subspaces, "exact");
  } else {
    throw UnknownFixture("fixture carries no family");
  }
  doc["fixture"] = fx.name;
  doc["fixture_detail"] = fx.detail;
  return doc;
}

json witness_to_json(const Witness& w) {
  if (std::holds_alternative<std::monostate>(w)) return nullptr;
  if (const auto* p = std::get_if<PartitionWitness>(&w))
    return json{{"type", "partition"}, {"side1", p->side1}, {"side2", p->side2}};
  if (const auto* p = std::get_if<IndexListWitness>(&w))
    return json{{"type", "indices"}, {"indices", p->indices}};
  if (const auto* p = std::get_if<VectorWitness>(&w))
    return json{{"type", "vector"}, {"x", p->x}, {"objective", p->objective}};
  if (const auto* p = std::get_if<PairWitness<Rat>>(&w)) {
    json per = json::array();
    for (std::size_t i = 0; i < p->norms_sq_u.size(); ++i)
      per.push_back({std::sqrt(to_double(p->norms_sq_u[i])),
                     std::sqrt(to_double(p->norms_sq_v[i]))});
    return json{{"type", "pair"},
                {"backend", "exact"},
                {"u", rat_vec_to_json(p->u)},
                {"v", rat_vec_to_json(p->v)},
                {"norms_sq_u", rat_list_to_json(p->norms_sq_u)},
                {"norms_sq_v", rat_list_to_json(p->norms_sq_v)},
                {"norm_sq_u", rational_to_string(p->norm_sq_u)},
                {"norm_sq_v", rational_to_string(p->norm_sq_v)},
                {"per_index_norms", per},
                {"norm_u", std::sqrt(to_double(p->norm_sq_u))},
                {"norm_v", std::sqrt(to_double(p->norm_sq_v))}};
  }
  const auto& p = std::get<PairWitness<double>>(w);
  json per = json::array();
  for (std::size_t i = 0; i < p.norms_sq_u.size(); ++i)
    per.push_back({std::sqrt(p.norms_sq_u[i]), std::sqrt(p.norms_sq_v[i])});
  return json{{"type", "pair"},
              {"backend", "float"},
              {"u", p.u},
              {"v", p.v},
              {"norms_sq_u", p.norms_sq_u},
              {"norms_sq_v", p.norms_sq_v},
              {"norm_sq_u", p.norm_sq_u},
              {"norm_sq_v", p.norm_sq_v},
              {"per_index_norms", per},
              {"norm_u", std::sqrt(p.norm_sq_u)},
              {"norm_v", std::sqrt(p.norm_sq_v)}};
}

json certificate_to_json(const Certificate& cert, std::uint64_t seed, double tol_rank,
                         double tol_orth, double runtime_ms) {
  return json{{"verdict", to_string(cert.verdict)},
              {"method", cert.method},
              {"witness", witness_to_json(cert.witness)},
              {"detail", cert.detail},
              {"seed", seed},
              {"tolerances", {{"rank", tol_rank}, {"orth", tol_orth}}},
              {"runtime_ms", runtime_ms}};
}

// ---------------------------------------------------------------------------
// witness replay

namespace {

bool fail_reason(std::string* reason, const std::string& why) {
  if (reason) *reason = why;
  return false;
}

template <class T>
bool replay_pair(const json& w, const SubspaceFamily<T>& fam, Property property,
                 std::string* reason) {
  PairWitness<T> pw;
  const std::size_t n = fam.ambient_dim;
  if (!w.contains("u") || !w.contains("v")) return fail_reason(reason, "pair witness lacks u/v");
  if constexpr (backend_traits<T>::exact) {
    for (const auto& e : w["u"]) pw.u.push_back(entry_to_rat(e));
    for (const auto& e : w["v"]) pw.v.push_back(entry_to_rat(e));
  } else {
    for (const auto& e : w["u"]) pw.u.push_back(entry_to_double(e));
    for (const auto& e : w["v"]) pw.v.push_back(entry_to_double(e));
  }
  if (pw.u.size() != n || pw.v.size() != n)
    return fail_reason(reason, "pair witness dimension mismatch");
  for (const auto& sub : fam.subspaces) {
    pw.norms_sq_u.push_back(norm_sq(sub.project(pw.u)));
    pw.norms_sq_v.push_back(norm_sq(sub.project(pw.v)));
  }
  pw.norm_sq_u = norm_sq(pw.u);
  pw.norm_sq_v = norm_sq(pw.v);
  if (!verify_pair_witness(pw, fam, property))
    return fail_reason(reason, "pair witness does not re-verify");
  return true;
}

template <class T>
SubspaceFamily<T> lines_of(const VectorFamily<T>& f) {
  std::vector<Subspace<T>> subs;
  for (const auto& v : f.vectors) subs.push_back(Subspace<T>::from_basis(f.ambient_dim, {v}));
  return SubspaceFamily<T>(f.ambient_dim, std::move(subs));
}

template <class T>
bool replay_partition_vectors(const json& w, const VectorFamily<T>& f, const std::string& method,
                              std::string* reason) {
  if (!w.contains("side1") || !w.contains("side2"))
    return fail_reason(reason, "partition witness lacks sides");
  const auto side1 = w["side1"].get<std::vector<int>>();
  const auto side2 = w["side2"].get<std::vector<int>>();
  if (side1.size() + side2.size() != f.size())
    return fail_reason(reason, "partition does not cover the family");
  std::vector<Vec<T>> vs1, vs2;
  for (int i : side1) vs1.push_back(f.vectors.at(i - 1));
  for (int i : side2) vs2.push_back(f.vectors.at(i - 1));
  const std::size_t n = f.ambient_dim;

  if (method.find("complement-property") != std::string::npos) {
    if (rank_of_vectors(vs1, n) == n || rank_of_vectors(vs2, n) == n)
      return fail_reason(reason, "one partition side spans R^N");
    return true;
  }
  // partition-orthogonality: the two complements must contain a
  // non-orthogonal pair
  const auto c1 = nullspace_of_rows(vs1, n);
  const auto c2 = nullspace_of_rows(vs2, n);
  for (const auto& a : c1)
    for (const auto& b : c2) {
      const T ip = dot(a, b);
      if constexpr (backend_traits<T>::exact) {
        if (ip != 0) return true;
      } else {
        if (std::abs(ip) > 1e-9 * std::max(1.0, norm(a) * norm(b))) return true;
      }
    }
  return fail_reason(reason, "partition complements are orthogonal");
}

VectorFamily<double> lifted_family_from_detail(const json& detail) {
  if (!detail.contains("lifted_vectors"))
    throw DataError("lift certificate lacks lifted_vectors detail");
  std::vector<Vec<double>> vs;
  for (const auto& row : detail["lifted_vectors"]) vs.push_back(row.get<Vec<double>>());
  if (vs.empty()) throw DataError("empty lifted family");
  return VectorFamily<double>(vs.front().size(), std::move(vs));
}

}  // namespace

bool verify_certificate_witness(const ParsedFamily& fam, const json& cert, Property property,
                                std::string* reason) {
  if (!cert.is_object()) return fail_reason(reason, "certificate must be a JSON object");
  if (cert.value("verdict", "") != "fail")
    return fail_reason(reason, "only fail certificates carry witnesses to replay");
  const json w = cert.value("witness", json());
  if (w.is_null()) return fail_reason(reason, "fail certificate without witness");
  const std::string method = cert.value("method", "");
  const std::string type = w.value("type", "");
  const json detail = cert.value("detail", json::object());

  // lift-stage witnesses refer to the lifted vector family recorded in the
  // certificate detail
  if (method.rfind("lift:", 0) == 0) {
    const VectorFamily<double> lifted = lifted_family_from_detail(detail);
    if (type == "partition")
      return replay_partition_vectors(w, lifted, method, reason);
    if (type == "indices" && method.find("not-a-frame") != std::string::npos) {
      if (rank_of_vectors(lifted.vectors, lifted.ambient_dim) < lifted.ambient_dim) return true;
      return fail_reason(reason, "lifted family spans after all");
    }
    return fail_reason(reason, "unsupported lift witness type: " + type);
  }

  if (type == "pair") {
    const bool exact_pair = w.value("backend", "exact") == "exact";
    return std::visit(
        [&](const auto& f) -> bool {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, VectorFamily<Rat>>) {
            return exact_pair ? replay_pair(w, lines_of(f), property, reason)
                              : replay_pair(w, to_float(lines_of(f)), property, reason);
          } else if constexpr (std::is_same_v<F, VectorFamily<double>>) {
            return replay_pair(w, lines_of(f), property, reason);
          } else if constexpr (std::is_same_v<F, SubspaceFamily<Rat>>) {
            return exact_pair ? replay_pair(w, f, property, reason)
                              : replay_pair(w, to_float(f), property, reason);
          } else {
            return replay_pair(w, f, property, reason);
          }
        },
        fam.family);
  }

  if (type == "partition") {
    if (const auto* vr = std::get_if<VectorFamily<Rat>>(&fam.family))
      return replay_partition_vectors(w, *vr, method, reason);
    if (const auto* vf = std::get_if<VectorFamily<double>>(&fam.family))
      return replay_partition_vectors(w, *vf, method, reason);
    return fail_reason(reason, "partition witness on a subspace family");
  }

  if (type == "indices") {
    const auto idx = w.value("indices", std::vector<int>());
    auto check = [&](const auto& f, auto is_vectors) -> bool {
      using std::abs;
      if (method.find("not-a-frame") != std::string::npos) {
        if constexpr (decltype(is_vectors)::value) {
          return rank_of_vectors(f.vectors, f.ambient_dim) < f.ambient_dim
                     ? true
                     : fail_reason(reason, "family is a frame");
        }
        return fail_reason(reason, "not-a-frame on non-vector family");
      }
      if (method.find("dimension-count") != std::string::npos) {
        if constexpr (!decltype(is_vectors)::value)
          return f.sum_dim() < f.ambient_dim ? true
                                             : fail_reason(reason, "dimension count suffices");
        return fail_reason(reason, "dimension-count on vector family");
      }
      if (method.find("pairwise-intersection") != std::string::npos) {
        if constexpr (!decltype(is_vectors)::value) {
          if (idx.size() != 2) return fail_reason(reason, "need two indices");
          return intersection_dim(f.subspaces.at(idx[0] - 1), f.subspaces.at(idx[1] - 1)) > 0
                     ? true
                     : fail_reason(reason, "intersection is trivial");
        }
        return fail_reason(reason, "intersection witness on vector family");
      }
      if (method.find("basis-orthogonality") != std::string::npos ||
          method.find("pair-orth") != std::string::npos ||
          method.find("thm-M") != std::string::npos) {
        if (idx.size() != 2) return fail_reason(reason, "need two indices");
        if constexpr (decltype(is_vectors)::value) {
          const auto ip = dot(f.vectors.at(idx[0] - 1), f.vectors.at(idx[1] - 1));
          return !backend_traits<std::decay_t<decltype(ip)>>::is_zero(ip, 1e-9)
                     ? true
                     : fail_reason(reason, "indexed vectors are orthogonal");
        } else {
          // non-orthogonal subspace pair (or hyperplane normals)
          for (const auto& bi : f.subspaces.at(idx[0] - 1).basis())
            for (const auto& bj : f.subspaces.at(idx[1] - 1).basis())
              if (!backend_traits<std::decay_t<decltype(dot(bi, bj))>>::is_zero(dot(bi, bj),
                                                                                1e-9))
                return true;
          return fail_reason(reason, "indexed subspaces are orthogonal");
        }
      }
      if (method.find("thm-Ca1") != std::string::npos) {
        if constexpr (!decltype(is_vectors)::value) {
          std::vector<Vec<Rat>> normals;
          if constexpr (std::is_same_v<std::decay_t<decltype(f)>, SubspaceFamily<Rat>>) {
            for (const auto& s : f.subspaces)
              normals.push_back(orthogonal_complement_basis(s).front());
            const bool hyperplanes = [&] {
              for (const auto& s : f.subspaces)
                if (s.dim() != f.ambient_dim - 1) return false;
              return true;
            }();
            if (hyperplanes && f.size() == f.ambient_dim - 1 &&
                rank_of_vectors(normals, f.ambient_dim) == f.size())
              return true;
          }
          return fail_reason(reason, "thm-Ca1 structure does not re-verify");
        }
        return fail_reason(reason, "thm-Ca1 witness on vector family");
      }
      return fail_reason(reason, "unsupported index witness method: " + method);
    };
    return std::visit(
        [&](const auto& f) -> bool {
          using F = std::decay_t<decltype(f)>;
          constexpr bool is_vec = std::is_same_v<F, VectorFamily<Rat>> ||
                                  std::is_same_v<F, VectorFamily<double>>;
          return check(f, std::integral_constant<bool, is_vec>{});
        },
        fam.family);
  }

  if (type == "vector") {
    // PR falsifier point witness: sigma_min at x must be tiny
    const auto x = w.value("x", Vec<double>());
    const auto fs = std::visit(
        [&](const auto& f) -> SubspaceFamily<double> {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, VectorFamily<Rat>>)
            return to_float(lines_of(f));
          else if constexpr (std::is_same_v<F, VectorFamily<double>>)
            return lines_of(f);
          else if constexpr (std::is_same_v<F, SubspaceFamily<Rat>>)
            return to_float(f);
          else
            return f;
        },
        fam.family);
    std::vector<Vec<double>> cols;
    for (const auto& s : fs.subspaces) cols.push_back(s.project(x));
    const double sigma =
        smallest_singular_value(MatrixNM<double>::from_columns(fs.ambient_dim, cols));
    return sigma < 1e-6 ? true : fail_reason(reason, "sigma_min at witness is not small");
  }

  return fail_reason(reason, "unsupported witness type: " + type);
}

}  // namespace framecert
