// Python bindings: the main certify/falsify/reconstruct/generate operations,
// exchanging families and certificates as plain dicts (the same JSON shapes
// the CLI uses).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "framecert/io.hpp"
#include "framecert/perturb.hpp"
#include "framecert/retrieve.hpp"

namespace py = pybind11;
namespace fc = framecert;
using fc::json;

namespace {

json to_json(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    json arr = json::array();
    for (const auto& item : obj) arr.push_back(to_json(item));
    return arr;
  }
  if (py::isinstance<py::dict>(obj)) {
    json o = json::object();
    for (const auto& item : obj.cast<py::dict>())
      o[item.first.cast<std::string>()] = to_json(item.second);
    return o;
  }
  throw py::type_error("unsupported value in family/certificate document");
}

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(to_py(item));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default: return py::none();
  }
}

fc::Property property_of(const std::string& p) {
  if (p == "pr") return fc::Property::PhaseRetrieval;
  if (p == "nr") return fc::Property::NormRetrieval;
  throw py::value_error("property must be 'pr' or 'nr'");
}

template <class T>
fc::SubspaceFamily<T> lines_of(const fc::VectorFamily<T>& f) {
  std::vector<fc::Subspace<T>> subs;
  for (const auto& v : f.vectors)
    subs.push_back(fc::Subspace<T>::from_basis(f.ambient_dim, {v}));
  return fc::SubspaceFamily<T>(f.ambient_dim, std::move(subs));
}

py::dict certify_impl(const py::dict& family, const std::string& property, std::uint64_t seed,
                      int starts, int iters, bool falsify_only) {
  const fc::ParsedFamily pf = fc::parse_family_document(to_json(family));
  const fc::Property prop = property_of(property);
  fc::FalsifierConfig cfg;
  cfg.seed = seed;
  cfg.starts = starts;
  cfg.max_iters = iters;

  const fc::Certificate cert = std::visit(
      [&](const auto& f) -> fc::Certificate {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, fc::VectorFamily<fc::Rat>> ||
                      std::is_same_v<F, fc::VectorFamily<double>>) {
          if (falsify_only) {
            const auto lines = lines_of(f);
            return prop == fc::Property::PhaseRetrieval ? fc::falsify_pr_subspaces(lines, cfg)
                                                        : fc::falsify_nr_subspaces(lines, cfg);
          }
          return prop == fc::Property::PhaseRetrieval ? fc::certify_pr_vectors(f)
                                                      : fc::certify_nr_vectors(f);
        } else {
          if (falsify_only)
            return prop == fc::Property::PhaseRetrieval ? fc::falsify_pr_subspaces(f, cfg)
                                                        : fc::falsify_nr_subspaces(f, cfg);
          return prop == fc::Property::PhaseRetrieval ? fc::certify_pr_subspaces(f, cfg)
                                                      : fc::certify_nr_subspaces(f, cfg);
        }
      },
      pf.family);
  return to_py(fc::certificate_to_json(cert, seed, 1e-10, 1e-9, 0.0)).cast<py::dict>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "phase and norm retrieval certificates for vector and subspace families";

  m.def("certify", &certify_impl, py::arg("family"), py::arg("property"), py::arg("seed") = 1,
        py::arg("starts") = 64, py::arg("iters") = 500, py::arg("falsify_only") = false,
        "Certify (or falsify) phase/norm retrieval for a family document.");

  m.def(
      "falsify",
      [](const py::dict& family, const std::string& property, std::uint64_t seed, int starts,
         int iters) { return certify_impl(family, property, seed, starts, iters, true); },
      py::arg("family"), py::arg("property"), py::arg("seed") = 1, py::arg("starts") = 64,
      py::arg("iters") = 500, "Run only the sphere falsifier.");

  m.def(
      "spark",
      [](const py::dict& family) -> std::size_t {
        const fc::ParsedFamily pf = fc::parse_family_document(to_json(family));
        return std::visit(
            [](const auto& f) -> std::size_t {
              using F = std::decay_t<decltype(f)>;
              if constexpr (std::is_same_v<F, fc::VectorFamily<fc::Rat>> ||
                            std::is_same_v<F, fc::VectorFamily<double>>)
                return fc::spark(f);
              else
                throw py::value_error("spark is defined for vector families");
            },
            pf.family);
      },
      py::arg("family"), "Size of the smallest linearly dependent subset (M+1 if none).");

  m.def(
      "is_full_spark",
      [](const py::dict& family) -> bool {
        const fc::ParsedFamily pf = fc::parse_family_document(to_json(family));
        if (const auto* vr = std::get_if<fc::VectorFamily<fc::Rat>>(&pf.family))
          return fc::is_full_spark(*vr);
        if (const auto* vf = std::get_if<fc::VectorFamily<double>>(&pf.family))
          return fc::is_full_spark(*vf);
        throw py::value_error("full spark is defined for vector families");
      },
      py::arg("family"));

  m.def(
      "reconstruct_norm_three_hyperplanes",
      [](double m1, double m2, double m3) {
        return fc::reconstruct_norm_three_hyperplanes(m1, m2, m3);
      },
      py::arg("m1"), py::arg("m2"), py::arg("m3"),
      "Norm from the canonical three-hyperplane projection norms.");

  m.def(
      "reconstruct_norm_sq_three_hyperplanes",
      [](const std::string& s1, const std::string& s2, const std::string& s3) {
        const fc::TripleMeasurementSq t{fc::parse_rational(s1), fc::parse_rational(s2),
                                        fc::parse_rational(s3)};
        return fc::rational_to_string(fc::reconstruct_norm_sq_three_hyperplanes(t));
      },
      py::arg("m1_sq"), py::arg("m2_sq"), py::arg("m3_sq"),
      "Exact squared norm from squared rational measurements (as strings).");

  m.def(
      "reconstruct_norm_tight",
      [](const py::dict& family, const std::vector<double>& meas) {
        const fc::ParsedFamily pf = fc::parse_family_document(to_json(family));
        if (const auto* vr = std::get_if<fc::VectorFamily<fc::Rat>>(&pf.family))
          return fc::reconstruct_norm_tight(fc::to_float(*vr), meas);
        if (const auto* vf = std::get_if<fc::VectorFamily<double>>(&pf.family))
          return fc::reconstruct_norm_tight(*vf, meas);
        throw py::value_error("tight reconstruction needs a vector family");
      },
      py::arg("family"), py::arg("measurements"));

  m.def(
      "fixture",
      [](const std::string& name, std::size_t n, std::uint64_t seed) {
        return to_py(fc::fixture_to_json(fc::fixture(name, n, seed)));
      },
      py::arg("name"), py::arg("n") = 0, py::arg("seed") = 1,
      "Named paper fixture as a family document.");

  m.def("fixture_names", [] { return fc::fixture_names(); });

  m.def(
      "generate_full_spark",
      [](std::size_t n, std::size_t m, std::uint64_t seed) {
        return to_py(
            fc::family_to_json(fc::AnyFamily{fc::random_full_spark(n, m, seed)},
                               fc::Backend::Exact));
      },
      py::arg("n"), py::arg("m"), py::arg("seed") = 1,
      "Seeded rational family verified full spark exactly.");

  m.def(
      "generate_two_basis",
      [](std::size_t n, std::uint64_t seed) {
        const auto [vecs, comps] = fc::two_basis_construction(n, seed);
        return py::make_tuple(
            to_py(fc::family_to_json(fc::AnyFamily{vecs}, fc::Backend::Exact)),
            to_py(fc::family_to_json(fc::AnyFamily{comps}, fc::Backend::Exact)));
      },
      py::arg("n"), py::arg("seed") = 1,
      "The 2N-1 two-basis construction and its hyperplane complements.");

  m.def(
      "neighborhood_scan",
      [](const py::dict& family, double radius, int samples, std::uint64_t seed,
         const std::string& property, bool unguarded) {
        const fc::ParsedFamily pf = fc::parse_family_document(to_json(family));
        fc::ScanConfig cfg;
        cfg.radius = radius;
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.property = property_of(property);
        cfg.unguarded = unguarded;
        const auto res = fc::neighborhood_scan(pf.family, cfg);
        py::dict out;
        out["samples"] = res.samples;
        out["radius"] = res.radius;
        out["seed"] = res.seed;
        py::dict verdicts;
        verdicts["fail"] = res.fail;
        verdicts["unknown"] = res.unknown;
        verdicts["pass"] = res.pass;
        out["verdicts"] = verdicts;
        if (res.first_nonfail) {
          py::dict fn;
          fn["sample_index"] = res.first_nonfail->sample_index;
          fn["sample_seed"] = res.first_nonfail->sample_seed;
          fn["verdict"] = res.first_nonfail->verdict;
          out["first_nonfail"] = fn;
        } else {
          out["first_nonfail"] = py::none();
        }
        return out;
      },
      py::arg("family"), py::arg("radius"), py::arg("samples"), py::arg("seed") = 1,
      py::arg("property") = "nr", py::arg("unguarded") = false,
      "Verdict histogram over a perturbation neighborhood of the family.");

  m.def(
      "verify_witness",
      [](const py::dict& family, const py::dict& certificate, const std::string& property) {
        const fc::ParsedFamily pf = fc::parse_family_document(to_json(family));
        std::string why;
        const bool ok =
            fc::verify_certificate_witness(pf, to_json(certificate), property_of(property), &why);
        return py::make_tuple(ok, why);
      },
      py::arg("family"), py::arg("certificate"), py::arg("property") = "nr",
      "Replay a fail certificate's witness; returns (ok, reason).");

  // LIFO handler order: register the base first so DataError wins
  py::register_exception<fc::Error>(m, "FramecertError", PyExc_RuntimeError);
  py::register_exception<fc::DataError>(m, "DataError", PyExc_ValueError);
}
