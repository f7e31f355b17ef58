#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "framecert/errors.hpp"

namespace framecert {

// Exact scalar backend: arbitrary-precision rationals, always normalized.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Default tolerances for the Float64 backend. Raw == on doubles is never
// used for mathematical decisions.
struct Tolerances {
  double rank = 1e-10;  // pivot threshold for float rank decisions
  double orth = 1e-9;   // orthogonality assertions
};

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }
inline double to_double(double x) { return x; }

// A double is a dyadic rational; this conversion is exact.
inline Rat rat_from_double_exact(double x) {
  if (!std::isfinite(x)) throw DataError("cannot convert non-finite double to rational");
  return Rat(x);
}

// Best rational approximation with denominator <= max_den (continued fractions).
inline Rat rationalize(double x, std::uint64_t max_den = 1000000) {
  if (!std::isfinite(x)) throw DataError("cannot rationalize non-finite double");
  const bool neg = x < 0;
  double v = neg ? -x : x;
  // convergents p/q of the continued fraction of v
  std::uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    const double fa = std::floor(frac);
    if (fa > 9e18) break;
    const auto a = static_cast<std::uint64_t>(fa);
    if (q0 != 0 && a != 0 && q1 > (max_den - q0) / a) break;  // next q exceeds cap
    const std::uint64_t p2 = a * p1 + p0;
    const std::uint64_t q2 = a * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double rem = frac - fa;
    if (rem < 1e-15 * std::max(1.0, v)) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rat(0);
  Rat r{Int(p1), Int(q1)};
  return neg ? Rat(-r) : r;
}

// Decimal integer parse; avoids cpp_int's octal reading of leading zeros.
inline Int parse_int_dec(std::string s) {
  if (s.empty()) throw DataError("empty integer literal");
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw DataError("malformed integer: " + s);
  const auto nz = s.find_first_not_of('0');
  s = nz == std::string::npos ? "0" : s.substr(nz);
  Int v(s);
  return neg ? Int(-v) : v;
}

// Parses "p/q", integers, and plain decimals ("-3", "1/2", "0.25", "1.5e-3").
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw DataError("empty rational literal");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int p = parse_int_dec(s.substr(0, slash));
    Int q = parse_int_dec(s.substr(slash + 1));
    if (q == 0) throw DataError("zero denominator: " + s);
    if (q < 0) { p = -p; q = -q; }
    return Rat(p, q);
  }
  // decimal form: sign, digits, optional fraction, optional exponent
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') { neg = s[i] == '-'; ++i; }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
    if (s[i] == '.') {
      if (seen_dot) throw DataError("malformed number: " + s);
      seen_dot = true;
    } else {
      digits.push_back(s[i]);
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    }
  }
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) { eneg = s[i] == '-'; ++i; }
    if (i == s.size()) throw DataError("malformed exponent: " + s);
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw DataError("malformed exponent: " + s);
      exp10 = exp10 * 10 + (s[i] - '0');
      if (exp10 > 100000) throw DataError("exponent out of range: " + s);
    }
    if (eneg) exp10 = -exp10;
  }
  if (i != s.size() || !seen_digit) throw DataError("malformed number: " + s);
  Int p = parse_int_dec(digits);
  if (neg) p = -p;
  const long net = exp10 - frac_digits;
  Int pow10 = 1;
  for (long k = 0; k < (net < 0 ? -net : net); ++k) pow10 *= 10;
  return net >= 0 ? Rat(p * pow10) : Rat(p, pow10);
}

inline std::string rational_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Exact square root of a rational, if it is a perfect square.
inline std::optional<Rat> exact_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  if (r == 0) return Rat(0);
  const Int p = numerator(r), q = denominator(r);
  const Int sp = sqrt(p), sq = sqrt(q);
  if (sp * sp != p || sq * sq != q) return std::nullopt;
  return Rat(sp, sq);
}

}  // namespace framecert
