#pragma once

// Certificates: a verdict, the method that decided it, and a machine-checkable
// witness. Fail certificates always carry a witness that re-verifies
// independently; "unknown" is only ever emitted by semi-decision falsifiers.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "framecert/linalg.hpp"

namespace framecert {

using json = nlohmann::json;

enum class Verdict { Pass, Fail, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "unknown";
  }
}

// A bipartition of [M]; indices are 1-based to match the usual convention.
struct PartitionWitness {
  std::vector<int> side1;
  std::vector<int> side2;
};

// Two vectors with equal per-index measurements violating PR or NR.
// Squared quantities are stored so the exact backend stays exact.
template <class T>
struct PairWitness {
  Vec<T> u, v;
  std::vector<T> norms_sq_u;  // ||P_i u||^2 per index
  std::vector<T> norms_sq_v;  // ||P_i v||^2 per index
  T norm_sq_u{};
  T norm_sq_v{};
};

struct VectorWitness {
  Vec<double> x;
  double objective = 0;
};

struct IndexListWitness {
  std::vector<int> indices;  // 1-based
};

using Witness = std::variant<std::monostate, PartitionWitness, PairWitness<Rat>,
                             PairWitness<double>, VectorWitness, IndexListWitness>;

struct Certificate {
  Verdict verdict = Verdict::Unknown;
  std::string method;
  Witness witness;
  json detail = json::object();

  bool has_witness() const { return !std::holds_alternative<std::monostate>(witness); }

  static Certificate pass(std::string method, json detail = json::object()) {
    return Certificate{Verdict::Pass, std::move(method), std::monostate{}, std::move(detail)};
  }
  static Certificate fail(std::string method, Witness w, json detail = json::object()) {
    return Certificate{Verdict::Fail, std::move(method), std::move(w), std::move(detail)};
  }
  static Certificate unknown(std::string method, json detail = json::object()) {
    return Certificate{Verdict::Unknown, std::move(method), std::monostate{}, std::move(detail)};
  }
};

}  // namespace framecert
