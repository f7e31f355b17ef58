#pragma once

// JSON interchange: family documents, certificate documents, and witness
// replay. Rationals travel as "p/q" strings so the exact backend never
// round-trips through floats.

#include <string>

#include "framecert/certificate.hpp"
#include "framecert/gen.hpp"
#include "framecert/subspaces.hpp"

namespace framecert {

enum class Backend { Exact, Float64 };

struct ParsedFamily {
  AnyFamily family;
  Backend backend = Backend::Exact;
};

// {"ambient_dim": N, "kind": "vectors"|"subspaces", "entries": [...],
//  "backend": "exact"|"float"}. Entries are rational strings ("p/q" or
// decimal strings) or JSON numbers; in exact mode numbers convert exactly
// (doubles are dyadic rationals).
ParsedFamily parse_family_document(const json& doc);

json family_to_json(const AnyFamily& fam, Backend backend);
json family_to_json(const ParsedFamily& fam);
json fixture_to_json(const Fixture& fx);

json witness_to_json(const Witness& w);

// CertificateDocument: verdict, method, witness, detail, seed, tolerances,
// runtime_ms.
json certificate_to_json(const Certificate& cert, std::uint64_t seed, double tol_rank,
                         double tol_orth, double runtime_ms);

// Replays a fail certificate's witness against the family and confirms the
// failure independently. Returns false (with a reason) when the witness
// does not re-verify.
bool verify_certificate_witness(const ParsedFamily& fam, const json& certificate_doc,
                                Property property, std::string* reason = nullptr);

}  // namespace framecert
