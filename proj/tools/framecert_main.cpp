// framecert: certify, falsify, and construct phase/norm retrieval instances
// from the command line. All documents are UTF-8 JSON, newline-terminated.
// Exit codes: 0 pass, 1 fail, 2 unknown, 64 usage error, 65 data error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "framecert/io.hpp"
#include "framecert/perturb.hpp"
#include "framecert/retrieve.hpp"

namespace fc = framecert;
using fc::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FRAMECERT_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw fc::DataError("FRAMECERT_SEED is not an integer");
    }
  }
  return 1;
}

// Written once, atomically: temp file in the target directory, then rename.
void emit(const std::string& text, const std::string& out_path) {
  const std::string payload = text + "\n";
  if (out_path.empty() || out_path == "-") {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    std::fflush(stdout);
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(out_path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw fc::DataError("cannot open output file: " + out_path);
    f << payload;
  }
  fs::rename(tmp, target);
}

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw fc::DataError("cannot open input file: " + path);
  try {
    json doc;
    f >> doc;
    return doc;
  } catch (const json::parse_error& e) {
    throw fc::DataError(std::string("malformed JSON: ") + e.what());
  }
}

struct FamilyArgs {
  std::string input;
  std::string fixture;
  std::size_t fixture_n = 0;
  std::string mode;  // "", "exact", "float"
};

void add_family_flags(CLI::App* cmd, FamilyArgs& args) {
  auto* in = cmd->add_option("--input", args.input, "family document (JSON file)");
  auto* fx = cmd->add_option("--fixture", args.fixture, "named fixture family");
  cmd->add_option("--n", args.fixture_n, "ambient dimension for parametric fixtures");
  cmd->add_option("--mode", args.mode, "scalar backend override: exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  in->excludes(fx);
}

fc::ParsedFamily load_family(const FamilyArgs& args, std::uint64_t seed) {
  fc::ParsedFamily pf;
  if (!args.fixture.empty()) {
    const auto fx = fc::fixture(args.fixture, args.fixture_n, seed);
    pf = fc::parse_family_document(fc::fixture_to_json(fx));
  } else if (!args.input.empty()) {
    pf = fc::parse_family_document(load_json_file(args.input));
  } else {
    throw fc::DataError("one of --input or --fixture is required");
  }
  if (args.mode == "float" && pf.backend == fc::Backend::Exact) {
    pf.backend = fc::Backend::Float64;
    if (const auto* vr = std::get_if<fc::VectorFamily<fc::Rat>>(&pf.family))
      pf.family = fc::to_float(*vr);
    else if (const auto* sr = std::get_if<fc::SubspaceFamily<fc::Rat>>(&pf.family))
      pf.family = fc::to_float(*sr);
  } else if (args.mode == "exact" && pf.backend == fc::Backend::Float64) {
    throw fc::DataError("cannot promote a float document to the exact backend");
  }
  return pf;
}

fc::Property parse_property(const std::string& p) {
  if (p == "pr") return fc::Property::PhaseRetrieval;
  if (p == "nr") return fc::Property::NormRetrieval;
  throw fc::DataError("property must be pr or nr");
}

int verdict_exit(fc::Verdict v) {
  switch (v) {
    case fc::Verdict::Pass: return kExitPass;
    case fc::Verdict::Fail: return kExitFail;
    default: return kExitUnknown;
  }
}

template <class T>
fc::SubspaceFamily<T> lines_of(const fc::VectorFamily<T>& f) {
  std::vector<fc::Subspace<T>> subs;
  for (const auto& v : f.vectors)
    subs.push_back(fc::Subspace<T>::from_basis(f.ambient_dim, {v}));
  return fc::SubspaceFamily<T>(f.ambient_dim, std::move(subs));
}

struct CertifyArgs {
  FamilyArgs family;
  std::string property;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = 20;
  int starts = 64;
  int iters = 500;
  std::string out;
};

int run_certify(const CertifyArgs& a, bool falsify_only) {
  const std::uint64_t seed = a.seed_set ? a.seed : default_seed();
  const fc::Property prop = parse_property(a.property);
  const fc::ParsedFamily pf = load_family(a.family, seed);

  fc::FalsifierConfig cfg;
  cfg.seed = seed;
  cfg.starts = a.starts;
  cfg.max_iters = a.iters;
  cfg.lift_trials = a.trials;

  const auto t0 = std::chrono::steady_clock::now();
  fc::Certificate cert = std::visit(
      [&](const auto& f) -> fc::Certificate {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, fc::VectorFamily<fc::Rat>> ||
                      std::is_same_v<F, fc::VectorFamily<double>>) {
          if (falsify_only) {
            // vectors are falsified through their lines (thm_PD form)
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
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  json doc = fc::certificate_to_json(cert, seed, 1e-10, a.tol, ms);
  doc["property"] = a.property;
  if (!a.family.fixture.empty()) doc["fixture"] = a.family.fixture;
  emit(doc.dump(), a.out);
  return verdict_exit(cert.verdict);
}

struct ReconstructArgs {
  std::string measurements;
  std::string measurements_sq;
  std::string frame_file;
  std::string meas_file;
  std::string mode = "float";
};

int run_reconstruct(const ReconstructArgs& a) {
  std::ostringstream out;
  out.precision(12);
  if (!a.measurements.empty() || !a.measurements_sq.empty()) {
    const bool squared = !a.measurements_sq.empty();
    const std::string& src = squared ? a.measurements_sq : a.measurements;
    std::vector<std::string> parts;
    std::stringstream ss(src);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(tok);
    if (parts.size() != 3)
      throw fc::DataError("three comma-separated measurements are required");
    if (squared) {
      const fc::TripleMeasurementSq t{fc::parse_rational(parts[0]), fc::parse_rational(parts[1]),
                                      fc::parse_rational(parts[2])};
      const fc::Rat nsq = fc::reconstruct_norm_sq_three_hyperplanes(t);
      out << std::sqrt(fc::to_double(nsq));
      if (a.mode == "exact") out << "\nnorm_sq = " << fc::rational_to_string(nsq);
    } else {
      const double m1 = fc::to_double(fc::parse_rational(parts[0]));
      const double m2 = fc::to_double(fc::parse_rational(parts[1]));
      const double m3 = fc::to_double(fc::parse_rational(parts[2]));
      out << fc::reconstruct_norm_three_hyperplanes(m1, m2, m3);
    }
    emit(out.str(), "");
    return kExitPass;
  }
  if (a.frame_file.empty() || a.meas_file.empty())
    throw fc::DataError("tight mode needs --frame and --meas");
  const auto pf = fc::parse_family_document(load_json_file(a.frame_file));
  const json meas = load_json_file(a.meas_file);
  if (!meas.is_array()) throw fc::DataError("measurement file must be a JSON array");
  if (const auto* vr = std::get_if<fc::VectorFamily<fc::Rat>>(&pf.family)) {
    if (a.mode == "exact") {
      std::vector<fc::Rat> msq;
      for (const auto& e : meas) {
        const fc::Rat m = e.is_string() ? fc::parse_rational(e.get<std::string>())
                                        : fc::rat_from_double_exact(e.get<double>());
        msq.push_back(m * m);
      }
      const fc::Rat nsq = fc::reconstruct_norm_sq_tight(*vr, msq);
      out << std::sqrt(fc::to_double(nsq)) << "\nnorm_sq = " << fc::rational_to_string(nsq);
      emit(out.str(), "");
      return kExitPass;
    }
    out << fc::reconstruct_norm_tight(fc::to_float(*vr), meas.get<std::vector<double>>());
  } else if (const auto* vf = std::get_if<fc::VectorFamily<double>>(&pf.family)) {
    out << fc::reconstruct_norm_tight(*vf, meas.get<std::vector<double>>());
  } else {
    throw fc::DataError("tight reconstruction needs a vector family");
  }
  emit(out.str(), "");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase and norm retrieval certificates for vector and subspace families"};
  app.require_subcommand(1);

  CertifyArgs cert_args;
  auto add_certify_like = [&](CLI::App* cmd) {
    add_family_flags(cmd, cert_args.family);
    cmd->add_option("--property", cert_args.property, "pr or nr")->required();
    cmd->add_option("--tol", cert_args.tol, "orthogonality tolerance (float backend)");
    cmd->add_option("--seed", cert_args.seed, "seed for randomized stages")
        ->each([&](const std::string&) { cert_args.seed_set = true; });
    cmd->add_option("--trials", cert_args.trials, "lift trials");
    cmd->add_option("--starts", cert_args.starts, "falsifier multi-starts");
    cmd->add_option("--iters", cert_args.iters, "falsifier iterations per start");
    cmd->add_option("--out", cert_args.out, "write the certificate here instead of stdout");
  };
  auto* certify = app.add_subcommand("certify", "decide pr/nr for a family");
  add_certify_like(certify);
  auto* falsify = app.add_subcommand("falsify", "run only the sphere falsifier");
  add_certify_like(falsify);

  ReconstructArgs rec_args;
  auto* reconstruct = app.add_subcommand("reconstruct", "reconstruct a norm from measurements");
  reconstruct->add_option("--measurements", rec_args.measurements,
                          "m1,m2,m3 for the canonical three hyperplanes");
  reconstruct->add_option("--measurements-sq", rec_args.measurements_sq,
                          "m1^2,m2^2,m3^2 as exact rationals");
  reconstruct->add_option("--frame", rec_args.frame_file, "tight frame document");
  reconstruct->add_option("--meas", rec_args.meas_file, "measurement array (JSON)");
  reconstruct->add_option("--mode", rec_args.mode, "exact|float")
      ->check(CLI::IsMember({"exact", "float"}));

  FamilyArgs spark_family;
  auto* spark_cmd = app.add_subcommand("spark", "smallest dependent subset size");
  add_family_flags(spark_cmd, spark_family);

  struct {
    std::string kind;
    std::size_t n = 3;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out;
    std::string complements_out;
  } gen_args;
  auto* generate = app.add_subcommand("generate", "generate seeded families");
  generate->add_option("--kind", gen_args.kind, "full-spark | two-basis")
      ->required()
      ->check(CLI::IsMember({"full-spark", "two-basis"}));
  generate->add_option("--n", gen_args.n, "ambient dimension")->required();
  generate->add_option("--m", gen_args.m, "family size (full-spark only)");
  generate->add_option("--seed", gen_args.seed, "generator seed")
      ->each([&](const std::string&) { gen_args.seed_set = true; });
  generate->add_option("--out", gen_args.out, "output file");
  generate->add_option("--complements-out", gen_args.complements_out,
                       "also write the hyperplane complements (two-basis)");

  struct {
    FamilyArgs family;
    double radius = 1e-3;
    int samples = 100;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string property = "nr";
    bool unguarded = false;
    std::string out;
  } scan_args;
  auto* scan = app.add_subcommand("scan", "verdict histogram over a perturbation neighborhood");
  add_family_flags(scan, scan_args.family);
  scan->add_option("--radius", scan_args.radius, "perturbation radius")->required();
  scan->add_option("--samples", scan_args.samples, "number of samples")->required();
  scan->add_option("--seed", scan_args.seed, "scan seed")
      ->each([&](const std::string&) { scan_args.seed_set = true; });
  scan->add_option("--property", scan_args.property, "pr or nr");
  scan->add_flag("--unguarded", scan_args.unguarded, "skip the T9/Theorem-A preconditions");
  scan->add_option("--out", scan_args.out, "output file");

  struct {
    FamilyArgs family;
    std::string certificate;
    std::string property = "nr";
  } verify_args;
  auto* verify = app.add_subcommand("verify-witness", "replay a fail certificate's witness");
  add_family_flags(verify, verify_args.family);
  verify->add_option("--certificate", verify_args.certificate, "certificate document")
      ->required();
  verify->add_option("--property", verify_args.property, "pr or nr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (certify->parsed()) return run_certify(cert_args, false);
    if (falsify->parsed()) return run_certify(cert_args, true);
    if (reconstruct->parsed()) return run_reconstruct(rec_args);

    if (spark_cmd->parsed()) {
      const auto pf = load_family(spark_family, default_seed());
      const std::size_t s = std::visit(
          [&](const auto& f) -> std::size_t {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, fc::VectorFamily<fc::Rat>> ||
                          std::is_same_v<F, fc::VectorFamily<double>>)
              return fc::spark(f);
            else
              throw fc::DataError("spark is defined for vector families");
          },
          pf.family);
      emit(std::to_string(s), "");
      return kExitPass;
    }

    if (generate->parsed()) {
      const std::uint64_t seed = gen_args.seed_set ? gen_args.seed : default_seed();
      if (gen_args.kind == "full-spark") {
        const std::size_t m = gen_args.m == 0 ? 2 * gen_args.n - 1 : gen_args.m;
        const auto fam = fc::random_full_spark(gen_args.n, m, seed);
        json doc = fc::family_to_json(fc::AnyFamily{fam}, fc::Backend::Exact);
        doc["seed"] = seed;
        emit(doc.dump(), gen_args.out);
      } else {
        const auto [vecs, comps] = fc::two_basis_construction(gen_args.n, seed);
        json doc = fc::family_to_json(fc::AnyFamily{vecs}, fc::Backend::Exact);
        doc["seed"] = seed;
        emit(doc.dump(), gen_args.out);
        if (!gen_args.complements_out.empty()) {
          json cdoc = fc::family_to_json(fc::AnyFamily{comps}, fc::Backend::Exact);
          cdoc["seed"] = seed;
          emit(cdoc.dump(), gen_args.complements_out);
        }
      }
      return kExitPass;
    }

    if (scan->parsed()) {
      const std::uint64_t seed = scan_args.seed_set ? scan_args.seed : default_seed();
      const auto pf = load_family(scan_args.family, seed);
      fc::ScanConfig cfg;
      cfg.radius = scan_args.radius;
      cfg.samples = scan_args.samples;
      cfg.seed = seed;
      cfg.property = parse_property(scan_args.property);
      cfg.unguarded = scan_args.unguarded;
      const auto res = fc::neighborhood_scan(pf.family, cfg);
      json doc{{"samples", res.samples},
               {"radius", res.radius},
               {"seed", res.seed},
               {"verdicts", {{"fail", res.fail}, {"unknown", res.unknown}, {"pass", res.pass}}}};
      if (res.first_nonfail) {
        doc["first_nonfail"] = {{"sample_index", res.first_nonfail->sample_index},
                                {"sample_seed", res.first_nonfail->sample_seed},
                                {"verdict", res.first_nonfail->verdict}};
      } else {
        doc["first_nonfail"] = nullptr;
      }
      emit(doc.dump(), scan_args.out);
      return kExitPass;
    }

    if (verify->parsed()) {
      const auto pf = load_family(verify_args.family, default_seed());
      const json cert = load_json_file(verify_args.certificate);
      std::string why;
      const bool ok = fc::verify_certificate_witness(pf, cert,
                                                     parse_property(verify_args.property), &why);
      json doc{{"witness_verified", ok}};
      if (!ok) doc["reason"] = why;
      emit(doc.dump(), "");
      return ok ? kExitPass : kExitFail;
    }
  } catch (const fc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
