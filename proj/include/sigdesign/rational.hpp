#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace sigdesign {

// All finite-game arithmetic is exact. Rationals are kept canonical
// (lowest terms, positive denominator) by the backend.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Parses "3", "-2/3" or decimal notation such as "0.75" (exactly 3/4).
// Throws DomainError{BadRational} on anything else.
Rational parse_rational(const std::string& text);

// Canonical "num/den" form; integers render without the denominator.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

}  // namespace sigdesign
