#pragma once

#include <map>
#include <optional>
#include <string>

#include "gksiegel/numeric.hpp"

namespace gksiegel {

// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& r);

// Element a + b*sqrt(d) of a real quadratic extension, d squarefree >= 1.
// d == 1 is canonicalized to a rational (b == 0).
class QuadExt {
public:
    QuadExt() : d_(1), a_(0), b_(0) {}
    QuadExt(const Rational& a) : d_(1), a_(a), b_(0) {}
    QuadExt(long d, const Rational& a, const Rational& b);

    static QuadExt sqrt_of(long d); // sqrt(d) for squarefree d >= 1

    long d() const { return d_; }
    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    QuadExt operator+(const QuadExt& o) const;
    QuadExt operator-(const QuadExt& o) const;
    QuadExt operator-() const;
    QuadExt operator*(const QuadExt& o) const;
    QuadExt inverse() const;
    QuadExt operator/(const QuadExt& o) const { return *this * o.inverse(); }
    bool operator==(const QuadExt& o) const;
    bool operator!=(const QuadExt& o) const { return !(*this == o); }

    QuadExt pow(long e) const;

    int sign() const; // exact, by squaring
    QuadExt abs() const { return sign() >= 0 ? *this : -*this; }
    bool operator<=(const QuadExt& o) const { return (o - *this).sign() >= 0; }
    bool operator<(const QuadExt& o) const { return (o - *this).sign() > 0; }

    Rational norm() const { return a_ * a_ - b_ * b_ * d_; }

    // Exact square root within the same field, when it exists.
    std::optional<QuadExt> sqrt_exact() const;

    std::string str() const;

private:
    long d_;
    Rational a_, b_;
    void match_field(const QuadExt& o, long& d) const;
};

// q^(e/2) as an element of Q(sqrt(q)); e may be negative.
QuadExt half_power(long q, long e2);

// Finite sum of c_r * sqrt(r) over squarefree positive radicands r.
// Key 1 holds the rational part.
class MultiQuad {
public:
    MultiQuad() = default;
    MultiQuad(const Rational& c) {
        if (c != 0) terms_[1] = c;
    }
    static MultiQuad radical(const Int& squarefree_r, const Rational& c);
    static MultiQuad from_quadext(const QuadExt& q);

    const std::map<Int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    Rational rational_value() const; // requires is_rational()

    MultiQuad operator+(const MultiQuad& o) const;
    MultiQuad operator*(const MultiQuad& o) const;

    std::string str() const;

private:
    std::map<Int, Rational> terms_;
    void add_term(const Int& r, const Rational& c);
};

} // namespace gksiegel
