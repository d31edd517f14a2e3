#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>

#include "rebp/error.hpp"

namespace rebp {

// All model data is exact. Rationals are arbitrary precision so denominator
// clearing and objective comparisons never round; doubles appear only in
// reports and timing columns.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return numerator(r); }
inline Integer den(const Rational& r) { return denominator(r); }

inline Integer rational_floor(const Rational& r) {
  Integer q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

inline Integer rational_ceil(const Rational& r) { return -rational_floor(-r); }

inline Integer int_lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

// Least common multiple of the denominators of a set of rationals; the unit
// that clears them all to integers.
inline Integer common_denominator(std::span<const Rational> values) {
  Integer l = 1;
  for (const Rational& v : values) l = int_lcm(l, den(v));
  return l;
}

inline std::int64_t to_int64(const Integer& v, Errc code, const std::string& what) {
  static const Integer lo = std::numeric_limits<std::int64_t>::min();
  static const Integer hi = std::numeric_limits<std::int64_t>::max();
  require(v >= lo && v <= hi, code, what + " does not fit in 64 bits: " + v.str());
  return v.convert_to<std::int64_t>();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Canonical text form: "n" when integral, "n/d" otherwise. Used by all file
// formats so writes round-trip losslessly and byte-identically.
inline std::string to_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

// Accepts "n", "n/d", and decimal literals like "-1.25" (the CLI takes
// tolerances in decimal). Decimals parse exactly: 1.25 -> 5/4.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&]() {
    fail(Errc::ParseError, "not a rational: '" + std::string(text) + "'");
  };
  if (text.empty()) bad();
  try {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      Integer n{std::string(text.substr(0, slash))};
      Integer d{std::string(text.substr(slash + 1))};
      if (d == 0) bad();
      return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational(Integer{std::string(text)});
    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos) bad();
    bool negative = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) head.remove_prefix(1);
    Integer whole = head.empty() ? Integer(0) : Integer{std::string(head)};
    if (whole < 0) bad();
    Integer scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    Rational magnitude = Rational(whole) + Rational(Integer{std::string(frac)}, scale);
    return negative ? Rational(-magnitude) : magnitude;
  } catch (const std::runtime_error&) {
    bad();
  }
  return 0;  // unreachable
}

}  // namespace rebp
