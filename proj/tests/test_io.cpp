#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "framecert/io.hpp"

using namespace framecert;

TEST_CASE("family documents: exact vectors round-trip with identical entries") {
  const json doc = json::parse(R"({
    "ambient_dim": 2,
    "kind": "vectors",
    "backend": "exact",
    "entries": [["1", "0"], ["1/3", "-2/7"], [0.5, 1]]
  })");
  const auto parsed = parse_family_document(doc);
  const auto& f = std::get<VectorFamily<Rat>>(parsed.family);
  CHECK(f.vectors[1][0] == Rat(1) / 3);
  CHECK(f.vectors[1][1] == Rat(-2) / 7);
  CHECK(f.vectors[2][0] == Rat(1) / 2);  // JSON numbers convert exactly

  const json out = family_to_json(parsed);
  const auto reparsed = parse_family_document(out);
  CHECK(std::get<VectorFamily<Rat>>(reparsed.family).vectors == f.vectors);
}

TEST_CASE("family documents: subspaces and float backend") {
  const json doc = json::parse(R"({
    "ambient_dim": 3,
    "kind": "subspaces",
    "backend": "float",
    "entries": [{"basis": [[1, 0, 0], [0, 0, 1]]}, {"basis": [[0, 1, 0]]}]
  })");
  const auto parsed = parse_family_document(doc);
  CHECK(parsed.backend == Backend::Float64);
  const auto& f = std::get<SubspaceFamily<double>>(parsed.family);
  CHECK(f.size() == 2);
  CHECK(f.subspaces[0].dim() == 2);

  const json out = family_to_json(parsed);
  CHECK(out["kind"] == "subspaces");
  CHECK(out["entries"][0]["basis"].size() == 2);
}

TEST_CASE("family documents: malformed input raises data errors") {
  CHECK_THROWS_AS(parse_family_document(json::parse(R"({"kind": "vectors"})")), DataError);
  CHECK_THROWS_AS(
      parse_family_document(json::parse(R"({"ambient_dim": 2, "entries": [["1"]]})")),
      DataError);
  CHECK_THROWS_AS(parse_family_document(json::parse(
                      R"({"ambient_dim": 2, "kind": "mystery", "entries": [["1","0"]]})")),
                  DataError);
  CHECK_THROWS_AS(parse_family_document(json::parse(
                      R"({"ambient_dim": 2, "kind": "vectors", "entries": [["1","q"]]})")),
                  DataError);
  // zero vectors are rejected by the family invariant
  CHECK_THROWS_AS(parse_family_document(json::parse(
                      R"({"ambient_dim": 2, "kind": "vectors", "entries": [["0","0"]]})")),
                  ZeroVector);
  // dependent subspace basis
  CHECK_THROWS_AS(
      parse_family_document(json::parse(
          R"({"ambient_dim": 2, "kind": "subspaces", "entries": [{"basis": [[1,0],[2,0]]}]})")),
      DataError);
}

TEST_CASE("certificate documents") {
  VectorFamily<Rat> onb(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  const auto cert = certify_pr_vectors(onb);
  const json doc = certificate_to_json(cert, 42, 1e-10, 1e-9, 3.5);
  CHECK(doc["verdict"] == "fail");
  CHECK(doc["witness"]["type"] == "partition");
  CHECK(doc["seed"] == 42);
  CHECK(doc["tolerances"]["rank"] == 1e-10);
  CHECK(!doc["witness"].is_null());
}

TEST_CASE("witness replay: complement-property partitions") {
  VectorFamily<Rat> onb(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  ParsedFamily pf{AnyFamily{onb}, Backend::Exact};
  const auto cert = certify_pr_vectors(onb);
  const json doc = certificate_to_json(cert, 1, 1e-10, 1e-9, 0);
  std::string why;
  CHECK(verify_certificate_witness(pf, doc, Property::PhaseRetrieval, &why));

  // tampering with the partition breaks replay
  json bad = doc;
  bad["witness"]["side1"] = {1, 2};
  bad["witness"]["side2"] = json::array();
  CHECK_FALSE(verify_certificate_witness(pf, bad, Property::PhaseRetrieval, &why));
}

TEST_CASE("witness replay: pair witnesses on subspace families") {
  const auto fx = fixture("two_subspace_counterexample_R3");
  ParsedFamily pf{AnyFamily{*fx.subspaces}, Backend::Exact};
  FalsifierConfig cfg;
  cfg.starts = 16;
  cfg.max_iters = 150;
  cfg.seed = 3;
  const auto cert = certify_nr_subspaces(*fx.subspaces, cfg);
  REQUIRE(cert.verdict == Verdict::Fail);
  const json doc = certificate_to_json(cert, 3, 1e-10, 1e-9, 0);
  std::string why;
  CHECK(verify_certificate_witness(pf, doc, Property::NormRetrieval, &why));

  // flip one coordinate of u: the measurements no longer match
  json bad = doc;
  bad["witness"]["u"][0] = "17";
  CHECK_FALSE(verify_certificate_witness(pf, bad, Property::NormRetrieval, &why));
}

TEST_CASE("witness replay: index witnesses") {
  // not-a-frame
  VectorFamily<Rat> thin(3, {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}});
  ParsedFamily pf{AnyFamily{thin}, Backend::Exact};
  const auto cert = certify_nr_vectors(thin);
  REQUIRE(cert.method == "not-a-frame");
  std::string why;
  CHECK(verify_certificate_witness(pf, certificate_to_json(cert, 1, 1e-10, 1e-9, 0),
                                   Property::NormRetrieval, &why));
}

TEST_CASE("fixture documents parse back") {
  const auto fx = fixture("canonical_three_hyperplanes", 5);
  const json doc = fixture_to_json(fx);
  const auto parsed = parse_family_document(doc);
  CHECK(std::get<SubspaceFamily<Rat>>(parsed.family).size() == 3);
  CHECK(doc["fixture"] == "canonical_three_hyperplanes");
}
