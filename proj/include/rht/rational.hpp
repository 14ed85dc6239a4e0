#pragma once

#include <gmpxx.h>

#include <string>

namespace rht {

/// Exact rational scalar. GMP keeps values canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Parses "p" or "p/q"; throws std::invalid_argument on malformed text or a
/// zero denominator.
Rational parse_rational(const std::string& text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline int sign_of_parity(long long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace rht
