#pragma once

// Certifiers for finite vector families: spark, full spark, complement
// property (= real phase retrieval), norm retrieval via partition
// orthogonality, and tightness.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framecert/certificate.hpp"
#include "framecert/linalg.hpp"

namespace framecert {

// Hard cap on family size for the 2^(M-1) partition enumerations.
inline constexpr std::size_t kMaxFamilySize = 24;

template <class T>
struct VectorFamily {
  std::size_t ambient_dim = 0;
  std::vector<Vec<T>> vectors;
  std::vector<std::string> labels;

  VectorFamily() = default;
  VectorFamily(std::size_t n, std::vector<Vec<T>> vs, std::vector<std::string> lbls = {})
      : ambient_dim(n), vectors(std::move(vs)), labels(std::move(lbls)) {
    if (ambient_dim < 1) throw DimensionMismatch("ambient dimension must be >= 1");
    for (const auto& v : vectors) {
      if (v.size() != ambient_dim) throw DimensionMismatch("vector family: ambient dim mismatch");
      if (is_zero_vec(v, 0.0)) throw ZeroVector("vector family: zero vector rejected");
    }
    if (!labels.empty() && labels.size() != vectors.size())
      throw DataError("vector family: label count mismatch");
  }

  std::size_t size() const { return vectors.size(); }
};

inline VectorFamily<double> to_float(const VectorFamily<Rat>& f) {
  std::vector<Vec<double>> vs;
  vs.reserve(f.size());
  for (const auto& v : f.vectors) vs.push_back(to_float(v));
  return VectorFamily<double>(f.ambient_dim, std::move(vs), f.labels);
}

// ---------------------------------------------------------------------------
// spark

namespace detail {

// Smallest dependent-subset size, capped: explores independent prefixes via
// shared elimination states and returns min(spark, cap).
template <class T>
std::size_t spark_capped(const VectorFamily<T>& f, std::size_t cap, double tol) {
  const std::size_t m = f.size();
  std::size_t best = std::min(cap, m + 1);  // no dependent subset at all => spark M+1
  auto walk = [&](auto&& self, std::size_t start, const RowEchelon<T>& state,
                  std::size_t depth) -> void {
    if (depth + 1 >= best) return;
    for (std::size_t i = start; i < m; ++i) {
      RowEchelon<T> next = state;
      if (!next.insert(f.vectors[i])) {
        best = std::min(best, depth + 1);
        if (best <= depth + 1) return;
      } else {
        self(self, i + 1, next, depth + 1);
      }
    }
  };
  walk(walk, 0, RowEchelon<T>(f.ambient_dim, tol), 0);
  return best;
}

}  // namespace detail

// Cardinality of the smallest linearly dependent subset; M+1 when the whole
// family is independent.
template <class T>
std::size_t spark(const VectorFamily<T>& f, double tol = 1e-10) {
  return detail::spark_capped(f, f.size() + 1, tol);
}

template <class T>
bool is_full_spark(const VectorFamily<T>& f, double tol = 1e-10) {
  if (f.size() < f.ambient_dim)
    throw FamilyTooSmall("is_full_spark needs at least N vectors");
  return detail::spark_capped(f, f.ambient_dim + 2, tol) == f.ambient_dim + 1;
}

// ---------------------------------------------------------------------------
// complement property

namespace detail {

// Row echelon over Z_p for the subset-spanning sweep. Spanning mod p
// implies spanning over Q, so a true entry in the resulting table is a
// certificate; false entries are only candidates and get re-verified in
// exact arithmetic where a verdict depends on them.
inline constexpr std::uint64_t kSpanPrime = 2147483629ULL;  // < 2^31

class ModEchelon {
 public:
  explicit ModEchelon(std::size_t dim) : dim_(dim) {}
  std::size_t rank() const { return rows_.size(); }
  bool spans() const { return rows_.size() == dim_; }

  bool insert(std::vector<std::uint64_t> v) {
    constexpr std::uint64_t p = kSpanPrime;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::uint64_t c = v[pivots_[k]];
      if (c == 0) continue;
      const std::uint64_t neg = p - c;
      for (std::size_t j = 0; j < dim_; ++j)
        v[j] = (v[j] + static_cast<unsigned __int128>(neg) * rows_[k][j] % p) % p;
    }
    std::size_t piv = dim_;
    for (std::size_t j = 0; j < dim_; ++j)
      if (v[j] != 0) { piv = j; break; }
    if (piv == dim_) return false;
    const std::uint64_t inv = mod_inverse(v[piv]);
    for (std::size_t j = 0; j < dim_; ++j)
      v[j] = static_cast<unsigned __int128>(v[j]) * inv % p;
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

 private:
  static std::uint64_t mod_inverse(std::uint64_t a) {
    // Fermat: a^(p-2) mod p
    constexpr std::uint64_t p = kSpanPrime;
    std::uint64_t e = p - 2, acc = 1, base = a % p;
    while (e) {
      if (e & 1) acc = static_cast<unsigned __int128>(acc) * base % p;
      base = static_cast<unsigned __int128>(base) * base % p;
      e >>= 1;
    }
    return acc;
  }

  std::size_t dim_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::uint64_t mod_reduce(const Rat& x) {
  constexpr std::uint64_t p = kSpanPrime;
  const Int num = numerator(x) % Int(p);
  const Int den = denominator(x) % Int(p);
  std::uint64_t n = static_cast<std::uint64_t>(num < 0 ? num + Int(p) : num);
  const auto d = static_cast<std::uint64_t>(den);  // positive by invariant
  if (d == 1) return n;
  // n / d mod p
  std::uint64_t e = p - 2, acc = 1, base = d % p;
  while (e) {
    if (e & 1) acc = static_cast<unsigned __int128>(acc) * base % p;
    base = static_cast<unsigned __int128>(base) * base % p;
    e >>= 1;
  }
  return static_cast<unsigned __int128>(n) * acc % p;
}

// spans[mask] == true iff {v_i : bit i set} spans (mod p for Rat input;
// with pivot tolerances for double input). Computed by a DFS over
// include/exclude decisions from the high bit down, sharing elimination
// states along prefixes; once a prefix spans, the whole contiguous block of
// descendant masks is filled at once.
inline std::vector<bool> spanning_table_modp(const std::vector<Vec<Rat>>& vs, std::size_t dim) {
  const std::size_t m = vs.size();
  if (m > kMaxFamilySize) throw DataError("family too large for partition enumeration");
  std::vector<std::vector<std::uint64_t>> red(m, std::vector<std::uint64_t>(dim));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < dim; ++j) red[i][j] = mod_reduce(vs[i][j]);
  std::vector<bool> table(std::size_t(1) << m, false);
  auto walk = [&](auto&& self, int bit, std::size_t prefix, const ModEchelon& state) -> void {
    if (state.spans()) {
      const std::size_t lo = prefix << (bit + 1);
      const std::size_t hi = (prefix + 1) << (bit + 1);
      std::fill(table.begin() + lo, table.begin() + hi, true);
      return;
    }
    if (bit < 0) return;
    self(self, bit - 1, prefix << 1, state);
    ModEchelon with = state;
    with.insert(red[static_cast<std::size_t>(bit)]);
    self(self, bit - 1, (prefix << 1) | 1, with);
  };
  walk(walk, static_cast<int>(m) - 1, 0, ModEchelon(dim));
  return table;
}

template <class T>
std::vector<bool> spanning_table(const std::vector<Vec<T>>& vs, std::size_t dim, double tol) {
  if constexpr (backend_traits<T>::exact) {
    (void)tol;
    return spanning_table_modp(vs, dim);
  } else {
    const std::size_t m = vs.size();
    if (m > kMaxFamilySize) throw DataError("family too large for partition enumeration");
    std::vector<bool> table(std::size_t(1) << m, false);
    auto walk = [&](auto&& self, int bit, std::size_t prefix,
                    const RowEchelon<T>& state) -> void {
      if (state.spans()) {
        const std::size_t lo = prefix << (bit + 1);
        const std::size_t hi = (prefix + 1) << (bit + 1);
        std::fill(table.begin() + lo, table.begin() + hi, true);
        return;
      }
      if (bit < 0) return;
      self(self, bit - 1, prefix << 1, state);
      RowEchelon<T> with = state;
      with.insert(vs[static_cast<std::size_t>(bit)]);
      self(self, bit - 1, (prefix << 1) | 1, with);
    };
    walk(walk, static_cast<int>(m) - 1, 0, RowEchelon<T>(dim, tol));
    return table;
  }
}

inline std::vector<int> mask_to_indices(std::size_t mask, std::size_t m) {
  std::vector<int> out;
  for (std::size_t i = 0; i < m; ++i)
    if (mask >> i & 1) out.push_back(static_cast<int>(i) + 1);
  return out;
}

inline bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline PartitionWitness make_partition(std::size_t side1_mask, std::size_t m) {
  const std::size_t full = (std::size_t(1) << m) - 1;
  return PartitionWitness{mask_to_indices(side1_mask, m),
                          mask_to_indices(full ^ side1_mask, m)};
}

}  // namespace detail

// Exhaustive over the 2^(M-1) unordered partitions (index 1 pinned to
// side 1): pass iff at least one side spans R^N for each of them. A fail
// reports the lexicographically smallest violating partition. In the exact
// backend the sweep runs mod p and only candidate violations are
// re-verified in rational arithmetic, so the verdict stays exact.
template <class T>
Certificate has_complement_property(const VectorFamily<T>& f, double tol = 1e-10) {
  const std::size_t m = f.size();
  const std::size_t n = f.ambient_dim;
  const auto spans = detail::spanning_table(f.vectors, n, tol);
  const std::size_t full = (std::size_t(1) << m) - 1;

  auto side_rank = [&](std::size_t mask) {
    std::vector<Vec<T>> vs;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) vs.push_back(f.vectors[i]);
    return rank_of_vectors(vs, n, tol);
  };

  std::vector<std::size_t> verified_ok;  // candidate masks refuted exactly
  while (true) {
    std::optional<std::size_t> worst;
    std::vector<int> worst_indices;
    for (std::size_t rest = 0; rest < (std::size_t(1) << (m - 1)); ++rest) {
      const std::size_t side1 = (rest << 1) | 1;
      if (spans[side1] || spans[full ^ side1]) continue;
      if (std::find(verified_ok.begin(), verified_ok.end(), side1) != verified_ok.end())
        continue;
      auto idx = detail::mask_to_indices(side1, m);
      if (!worst || detail::lex_less(idx, worst_indices)) {
        worst = side1;
        worst_indices = std::move(idx);
      }
    }
    if (!worst) {
      return Certificate::pass("complement-property",
                               {{"partitions_checked", std::size_t(1) << (m - 1)}});
    }
    const std::size_t s1 = *worst;
    const std::size_t r1 = side_rank(s1);
    const std::size_t r2 = side_rank(full ^ s1);
    if (backend_traits<T>::exact && (r1 == n || r2 == n)) {
      verified_ok.push_back(s1);  // mod-p candidate refuted; rescan
      continue;
    }
    json det{{"rank_side1", r1}, {"rank_side2", r2}, {"ambient_dim", n}};
    return Certificate::fail("complement-property", detail::make_partition(s1, m), det);
  }
}

// Real phase retrieval <=> complement property.
template <class T>
Certificate certify_pr_vectors(const VectorFamily<T>& f, double tol = 1e-10) {
  return has_complement_property(f, tol);
}

// Norm retrieval for a frame: for every partition, the orthogonal
// complements of the two sides' spans must be orthogonal to each other.
template <class T>
Certificate certify_nr_vectors(const VectorFamily<T>& f, double tol_rank = 1e-10,
                               double tol_orth = 1e-9) {
  const std::size_t m = f.size();
  const std::size_t n = f.ambient_dim;
  if (m > kMaxFamilySize) throw DataError("family too large for partition enumeration");

  const std::size_t total_rank = rank_of_vectors(f.vectors, n, tol_rank);
  if (total_rank < n) {
    std::vector<int> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = static_cast<int>(i) + 1;
    return Certificate::fail("not-a-frame", IndexListWitness{all},
                             {{"rank", total_rank}, {"ambient_dim", n}});
  }

  const auto spans = detail::spanning_table(f.vectors, n, tol_rank);
  const std::size_t full = (std::size_t(1) << m) - 1;

  std::optional<std::size_t> worst;
  std::vector<int> worst_indices;
  Vec<T> worst_a, worst_b;
  T worst_ip{};

  for (std::size_t rest = 0; rest < (std::size_t(1) << (m - 1)); ++rest) {
    const std::size_t side1 = (rest << 1) | 1;
    const std::size_t side2 = full ^ side1;
    // a spanning side has complement {0}; orthogonality then holds trivially
    if (spans[side1] || spans[side2]) continue;
    std::vector<Vec<T>> vs1, vs2;
    for (std::size_t i = 0; i < m; ++i) (side1 >> i & 1 ? vs1 : vs2).push_back(f.vectors[i]);
    const auto comp1 = nullspace_of_rows(vs1, n, tol_rank);
    const auto comp2 = nullspace_of_rows(vs2, n, tol_rank);
    for (const auto& a : comp1) {
      for (const auto& b : comp2) {
        const T ip = dot(a, b);
        bool zero;
        if constexpr (backend_traits<T>::exact) {
          zero = ip == 0;
        } else {
          zero = std::abs(ip) <= tol_orth * std::max(1.0, norm(a) * norm(b));
        }
        if (zero) continue;
        auto idx = detail::mask_to_indices(side1, m);
        if (!worst || detail::lex_less(idx, worst_indices)) {
          worst = side1;
          worst_indices = std::move(idx);
          worst_a = a;
          worst_b = b;
          worst_ip = ip;
        }
        goto next_partition;
      }
    }
  next_partition:;
  }

  if (!worst) {
    return Certificate::pass("partition-orthogonality",
                             {{"partitions_checked", std::size_t(1) << (m - 1)}});
  }
  json det;
  if constexpr (backend_traits<T>::exact) {
    det["complement_vector_side1"] = json::array();
    det["complement_vector_side2"] = json::array();
    for (const auto& x : worst_a) det["complement_vector_side1"].push_back(rational_to_string(x));
    for (const auto& x : worst_b) det["complement_vector_side2"].push_back(rational_to_string(x));
    det["inner_product"] = rational_to_string(worst_ip);
  } else {
    det["complement_vector_side1"] = worst_a;
    det["complement_vector_side2"] = worst_b;
    det["inner_product"] = worst_ip;
  }
  return Certificate::fail("partition-orthogonality", detail::make_partition(*worst, m), det);
}

// Frame bound A when sum of phi phi^T equals A times the identity.
template <class T>
std::optional<T> is_tight(const VectorFamily<T>& f, double tol = 1e-9) {
  const std::size_t n = f.ambient_dim;
  MatrixNM<T> s(n, n);
  for (const auto& v : f.vectors)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s(i, j) += v[i] * v[j];
  const T a = s(0, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const T want = i == j ? a : T{};
      if constexpr (backend_traits<T>::exact) {
        if (s(i, j) != want) return std::nullopt;
      } else {
        if (std::abs(s(i, j) - want) > tol * std::max(1.0, std::abs(a))) return std::nullopt;
      }
    }
  }
  return a;
}

// A basis does norm retrieval iff it is an orthogonal basis.
template <class T>
Certificate basis_nr_iff_orthogonal(const VectorFamily<T>& f, double tol_rank = 1e-10,
                                    double tol_orth = 1e-9) {
  const std::size_t n = f.ambient_dim;
  if (f.size() != n || rank_of_vectors(f.vectors, n, tol_rank) != n)
    throw NotABasis("basis_nr_iff_orthogonal: input is not a basis of R^N");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const T ip = dot(f.vectors[i], f.vectors[j]);
      bool zero;
      if constexpr (backend_traits<T>::exact) {
        zero = ip == 0;
      } else {
        zero = std::abs(ip) <=
               tol_orth * std::max(1.0, norm(f.vectors[i]) * norm(f.vectors[j]));
      }
      if (!zero) {
        json det;
        if constexpr (backend_traits<T>::exact)
          det["inner_product"] = rational_to_string(ip);
        else
          det["inner_product"] = ip;
        return Certificate::fail("basis-orthogonality",
                                 IndexListWitness{{static_cast<int>(i) + 1,
                                                   static_cast<int>(j) + 1}},
                                 det);
      }
    }
  }
  return Certificate::pass("basis-orthogonality");
}

}  // namespace framecert
