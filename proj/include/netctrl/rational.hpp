#pragma once

#include <gmpxx.h>

#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace netctrl {

/// Arbitrary precision rational, always kept in canonical form
/// (positive denominator, coprime numerator/denominator, zero as 0/1).
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses an integer ("-3"), a fraction ("3/4") or a finite decimal ("1.25")
/// exactly. Returns nullopt on anything else.
inline std::optional<Rational> try_parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string_view body = text;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) return std::nullopt;

  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    value = Rational(BigInt(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !all_digits(whole)) return std::nullopt;
    if (!frac.empty() && !all_digits(frac)) return std::nullopt;
    std::string digits = std::string(whole) + std::string(frac);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    value = Rational(BigInt(digits.empty() ? "0" : digits, 10), den);
  } else {
    if (!all_digits(body)) return std::nullopt;
    value = Rational(BigInt(std::string(body), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

/// Converts a finite double through its shortest round-trip decimal form, so
/// that 0.1 becomes 1/10 rather than the nearest binary fraction.
inline std::optional<Rational> rational_from_double(double x) {
  char buf[1100];  // fixed notation of DBL_MAX needs 309 digits
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
  if (res.ec != std::errc()) return std::nullopt;
  return try_parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace netctrl
