#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "vcert/errors.hpp"

namespace vcert {

/// Exact rational scalar. GMP keeps the value canonical (gcd 1, positive
/// denominator) after every arithmetic operation; constructors that take a
/// numerator/denominator pair go through make_rat, which canonicalizes.
///
/// Note: GMP uses expression templates, so results must be bound to a named
/// Rat rather than `auto`.
using Rat = mpq_class;

inline Rat to_rat(std::int64_t v) { return Rat(static_cast<long>(v)); }

inline Rat make_rat(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  Rat r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

/// "p/q", or "p" when q == 1.
inline std::string to_string(const Rat& r) { return r.get_str(10); }

/// Parses "p", "-p", "p/q" with decimal integers. Whitespace is not accepted.
inline Rat parse_rat(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
    throw InvalidInput("malformed rational '" + std::string(text) + "'");
  auto strip_plus = [](std::string_view s) { return std::string(s.front() == '+' ? s.substr(1) : s); };
  mpz_class p(strip_plus(num), 10);
  mpz_class q(strip_plus(den), 10);
  if (q == 0) throw InvalidInput("rational with zero denominator '" + std::string(text) + "'");
  Rat r(p, q);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline int sign(const Rat& r) { return sgn(r); }

}  // namespace vcert
