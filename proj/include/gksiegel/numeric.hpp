#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gksiegel/errors.hpp"

namespace gksiegel {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

Int int_pow(const Int& base, long exp);
Rational rat_pow(const Rational& base, long exp);

// p-adic valuation; throws on zero input.
long ord_p(const Int& x, const Int& p);
long ord_p(const Rational& x, const Int& p);

bool is_probable_prime(const Int& n);

// Trial division up to `bound`, then a primality test on the cofactor.
// Throws validation_error if the cofactor is composite and unfactored.
std::vector<std::pair<Int, long>> factorize(const Int& n, const Int& bound = Int(1000000));

// Legendre symbol (a/p) for an odd prime p.
int legendre(const Int& a, const Int& p);

// Square class of a nonzero integer in Q_p^x: returns {valuation v, xi} where
// xi = +1 if p^{-v}x is a square unit, -1 if it generates the unramified
// quadratic extension, 0 if sqrt(x) generates a ramified extension.
struct SquareClass {
    long v = 0;
    int xi = 0;
};
SquareClass square_class(const Int& x, const Int& p);

// ord of the relative discriminant ideal of Q_p(sqrt(x))/Q_p (0 if x is a square).
long disc_ideal_ord(const Int& x, const Int& p);

// Exact decimal rendering of a rational, `digits` significant digits, round toward zero.
std::string to_decimal(const Rational& r, int digits);

std::string rat_to_string(const Rational& r);
Rational rat_from_string(const std::string& s);

} // namespace gksiegel
