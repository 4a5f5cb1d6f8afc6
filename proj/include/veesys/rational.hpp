#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace veesys {

/// Arbitrary-precision rational; GMP keeps it reduced with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" (optional leading sign, q != 0). Throws ParseError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace veesys
