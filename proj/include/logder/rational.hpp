#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace logder {

/// Exact rational scalar used everywhere in the library.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parse a rational from the strict grammar "p", "-p" or "p/q" (base 10, q > 0).
/// Throws std::invalid_argument on any other shape.
inline Rational parse_rational(std::string_view tok) {
  auto fail = [&]() -> void {
    throw std::invalid_argument("malformed rational: '" + std::string(tok) + "'");
  };
  if (tok.empty()) fail();
  std::size_t i = 0;
  if (tok[0] == '-') i = 1;
  std::size_t num_begin = i;
  while (i < tok.size() && tok[i] >= '0' && tok[i] <= '9') ++i;
  if (i == num_begin) fail();
  Integer num{std::string(tok.substr(0, i))};
  Integer den = 1;
  if (i < tok.size()) {
    if (tok[i] != '/') fail();
    ++i;
    std::size_t den_begin = i;
    while (i < tok.size() && tok[i] >= '0' && tok[i] <= '9') ++i;
    if (i == den_begin || i != tok.size()) fail();
    den = Integer{std::string(tok.substr(den_begin))};
    if (den == 0) fail();
  }
  return Rational(num) / Rational(den);
}

/// Canonical base-10 rendering, "p" or "p/q" with q > 0.
inline std::string rational_str(const Rational& q) { return q.str(); }

}  // namespace logder
