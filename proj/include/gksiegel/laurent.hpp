#pragma once

#include <map>
#include <string>

#include "gksiegel/numeric.hpp"

namespace gksiegel {

// Laurent polynomial in Y^(1/2). Exponents are stored doubled, so the key e
// represents Y^(e/2); all arithmetic stays in integers.
class HalfExpLaurent {
public:
    HalfExpLaurent() = default;
    explicit HalfExpLaurent(const Rational& c) {
        if (c != 0) terms_[0] = c;
    }
    static HalfExpLaurent monomial(long exp2, const Rational& c) {
        HalfExpLaurent p;
        if (c != 0) p.terms_[exp2] = c;
        return p;
    }

    const std::map<long, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(long exp2, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(exp2);
        if (it == terms_.end()) {
            terms_[exp2] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    HalfExpLaurent operator+(const HalfExpLaurent& o) const;
    HalfExpLaurent operator-(const HalfExpLaurent& o) const;
    HalfExpLaurent operator-() const;
    HalfExpLaurent operator*(const HalfExpLaurent& o) const;
    HalfExpLaurent shifted(long exp2) const;      // multiply by Y^(exp2/2)
    HalfExpLaurent scaled(const Rational& c) const;
    bool operator==(const HalfExpLaurent& o) const { return terms_ == o.terms_; }

    // Division by a monomial c*Y^(e/2); exact by construction.
    HalfExpLaurent divided_by_monomial(long exp2, const Rational& c) const;

    // True if the polynomial has a single term; reports it.
    bool as_monomial(long& exp2, Rational& c) const;

private:
    std::map<long, Rational> terms_;
};

enum class SubstRule {
    XtoYX,    // X |-> Y*X
    XtoYXinv, // X |-> Y*X^{-1}
    XtoXinv,  // X |-> X^{-1}
};

// Laurent polynomial in X^(1/2) with HalfExpLaurent coefficients in Y.
// X-exponents are doubled as well.
class BivariateLaurent {
public:
    BivariateLaurent() = default;
    explicit BivariateLaurent(const Rational& c) {
        HalfExpLaurent h(c);
        if (!h.is_zero()) terms_[0] = h;
    }
    static BivariateLaurent monomial(long xexp2, long yexp2, const Rational& c) {
        BivariateLaurent p;
        if (c != 0) p.terms_[xexp2] = HalfExpLaurent::monomial(yexp2, c);
        return p;
    }

    const std::map<long, HalfExpLaurent>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(long xexp2, const HalfExpLaurent& c);

    BivariateLaurent operator+(const BivariateLaurent& o) const;
    BivariateLaurent operator-(const BivariateLaurent& o) const;
    BivariateLaurent operator-() const;
    BivariateLaurent operator*(const BivariateLaurent& o) const;
    BivariateLaurent scaled(const Rational& c) const;
    BivariateLaurent shifted_x(long xexp2) const; // multiply by X^(xexp2/2)
    bool operator==(const BivariateLaurent& o) const { return terms_ == o.terms_; }

    BivariateLaurent substituted(SubstRule rule) const;

    long lowest_x() const;  // doubled; requires nonzero
    long highest_x() const; // doubled; requires nonzero

private:
    std::map<long, HalfExpLaurent> terms_;
};

// Formal power series of numer/denom in X, truncated at doubled X-degree
// <= order2. The lowest X-term of denom must be a Y-monomial.
BivariateLaurent series_expand_quotient(const BivariateLaurent& numer,
                                        const BivariateLaurent& denom, long order2);

// Canonical text form: terms sorted by (X-exponent, Y-exponent), half
// exponents printed as e.g. X^(1/2).
std::string to_string(const BivariateLaurent& p);
std::string to_string(const HalfExpLaurent& p, const std::string& var = "Y");

} // namespace gksiegel
