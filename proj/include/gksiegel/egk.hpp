#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gksiegel/laurent.hpp"
#include "gksiegel/quadext.hpp"

namespace gksiegel {

// (a_1..a_n; eps_1..eps_n) subject to (N1)-(N5).
struct NaiveEGKDatum {
    std::vector<long> a;
    std::vector<int> eps;
    int n() const { return static_cast<int>(a.size()); }
};

// Partial-sum ledger: e_i = a_1+...+a_i for odd i, rounded down to even for even i.
std::vector<long> ei_ledger(const std::vector<long>& a);

// Throws validation_error naming the first violated condition (N1..N5).
NaiveEGKDatum validate_negk(const std::vector<long>& a, const std::vector<int>& eps);

// The polynomial G(H;Y,X) = sum_i coeffs[i] X^i of degree eN, with Laurent
// coefficients in Y. F(H;Y,X) = X^{-eN/2} G(H;Y,X).
struct GPoly {
    std::vector<HalfExpLaurent> coeffs;
    long eN = 0;
};

BivariateLaurent g_to_bivariate(const GPoly& g);
BivariateLaurent f_of(const GPoly& g); // exponent shift by -eN/2

// Division-free coefficient induction (primary route).
GPoly f_poly(const NaiveEGKDatum& H);

// Literal evaluation of the defining recursion through the rational functions
// C and D, with exact power-series division (cross-validation route).
GPoly f_poly_series(const NaiveEGKDatum& H);

// F(H;Y,X^{-1}) - zeta*F(H;Y,X); must be identically zero.
BivariateLaurent functional_eq_defect(const NaiveEGKDatum& H);

// a_i(Y) at Y = sqrt(q), exact in Q(sqrt(q)).
QuadExt coeff_at_sqrtq(const HalfExpLaurent& c, long q);

// F(H; sqrt(q), X) at X on the unit circle, parametrized by t = X + X^{-1}.
// Requires the symmetric case (even X-support and palindromic coefficients).
QuadExt specialize_t(const GPoly& g, long q, const QuadExt& t);

// F(H; sqrt(q), x) for an explicit value x; odd X-support needs an exact
// square root of x inside Q(sqrt(q)).
QuadExt specialize_x(const GPoly& g, long q, const QuadExt& x);

// |F(H; sqrt(q), e^{i theta})|^2 at w = 2 cos(theta/2), exact.
QuadExt abs_sq_on_circle(const GPoly& g, long q, const Rational& w);

struct BoundCheckReport {
    long coeff_checks = 0;
    long coeff_violations = 0;
    long value_checks = 0;
    long value_violations = 0;
    bool ok() const { return coeff_violations == 0 && value_violations == 0; }
};

// Coefficient bound, |F| bound at sampled points with |Re(s)| <= r0 (the
// sign-symmetric reading of the band), and for even n the discriminant-free
// variant of the value bound.
BoundCheckReport bound_check(const NaiveEGKDatum& H, long q, const Rational& r0);

std::string datum_to_string(const NaiveEGKDatum& H);

} // namespace gksiegel
