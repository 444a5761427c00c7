#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ltnn {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;
using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

/// Parses "p/q", "-12", "0.125", "1e-3" or "3.5E2" exactly. Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

Rational dot(const Vec& a, const Vec& b);

/// Scales by a positive rational so entries become coprime integers.
/// The zero vector is returned unchanged.
Vec primitive_integer(const Vec& v);

std::string to_string(const Vec& v);

}  // namespace ltnn
