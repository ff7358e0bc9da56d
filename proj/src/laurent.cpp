#include "gksiegel/laurent.hpp"

#include <sstream>

namespace gksiegel {

HalfExpLaurent HalfExpLaurent::operator+(const HalfExpLaurent& o) const {
    HalfExpLaurent r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

HalfExpLaurent HalfExpLaurent::operator-(const HalfExpLaurent& o) const {
    HalfExpLaurent r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

HalfExpLaurent HalfExpLaurent::operator-() const {
    HalfExpLaurent r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

HalfExpLaurent HalfExpLaurent::operator*(const HalfExpLaurent& o) const {
    HalfExpLaurent r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

HalfExpLaurent HalfExpLaurent::shifted(long exp2) const {
    HalfExpLaurent r;
    for (const auto& [e, c] : terms_) r.terms_[e + exp2] = c;
    return r;
}

HalfExpLaurent HalfExpLaurent::scaled(const Rational& c) const {
    HalfExpLaurent r;
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
}

HalfExpLaurent HalfExpLaurent::divided_by_monomial(long exp2, const Rational& c) const {
    check_invariant(c != 0, "division by zero monomial");
    HalfExpLaurent r;
    for (const auto& [e, v] : terms_) r.terms_[e - exp2] = v / c;
    return r;
}

bool HalfExpLaurent::as_monomial(long& exp2, Rational& c) const {
    if (terms_.size() != 1) return false;
    exp2 = terms_.begin()->first;
    c = terms_.begin()->second;
    return true;
}

void BivariateLaurent::add_term(long xexp2, const HalfExpLaurent& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(xexp2);
    if (it == terms_.end()) {
        terms_[xexp2] = c;
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BivariateLaurent BivariateLaurent::operator+(const BivariateLaurent& o) const {
    BivariateLaurent r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

BivariateLaurent BivariateLaurent::operator-(const BivariateLaurent& o) const {
    BivariateLaurent r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

BivariateLaurent BivariateLaurent::operator-() const {
    BivariateLaurent r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

BivariateLaurent BivariateLaurent::operator*(const BivariateLaurent& o) const {
    BivariateLaurent r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

BivariateLaurent BivariateLaurent::scaled(const Rational& c) const {
    BivariateLaurent r;
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_[e] = v.scaled(c);
    return r;
}

BivariateLaurent BivariateLaurent::shifted_x(long xexp2) const {
    BivariateLaurent r;
    for (const auto& [e, v] : terms_) r.terms_[e + xexp2] = v;
    return r;
}

BivariateLaurent BivariateLaurent::substituted(SubstRule rule) const {
    BivariateLaurent r;
    for (const auto& [xe, coeff] : terms_) {
        switch (rule) {
            case SubstRule::XtoYX:
                // c*Y^(a/2)*X^(b/2) -> c*Y^((a+b)/2)*X^(b/2)
                r.add_term(xe, coeff.shifted(xe));
                break;
            case SubstRule::XtoYXinv:
                r.add_term(-xe, coeff.shifted(xe));
                break;
            case SubstRule::XtoXinv:
                r.add_term(-xe, coeff);
                break;
        }
    }
    return r;
}

long BivariateLaurent::lowest_x() const {
    check_invariant(!terms_.empty(), "lowest_x of zero polynomial");
    return terms_.begin()->first;
}

long BivariateLaurent::highest_x() const {
    check_invariant(!terms_.empty(), "highest_x of zero polynomial");
    return terms_.rbegin()->first;
}

BivariateLaurent series_expand_quotient(const BivariateLaurent& numer,
                                        const BivariateLaurent& denom, long order2) {
    require(!denom.is_zero(), "series_expand_quotient: zero denominator");
    long d0 = denom.lowest_x();
    long lead_exp2;
    Rational lead_c;
    require(denom.terms().begin()->second.as_monomial(lead_exp2, lead_c),
            "series_expand_quotient: lowest denominator term is not invertible");
    BivariateLaurent result;
    BivariateLaurent rem = numer;
    while (!rem.is_zero()) {
        long r0 = rem.lowest_x();
        if (r0 - d0 > order2) break;
        HalfExpLaurent q = rem.terms().begin()->second.divided_by_monomial(lead_exp2, lead_c);
        BivariateLaurent qterm;
        qterm.add_term(r0 - d0, q);
        result = result + qterm;
        rem = rem - qterm * denom;
    }
    return result;
}

namespace {

std::string exp_string(long exp2) {
    if (exp2 % 2 == 0) {
        long e = exp2 / 2;
        if (e >= 0) return std::to_string(e);
        return "(" + std::to_string(e) + ")";
    }
    return "(" + std::to_string(exp2) + "/2)";
}

void append_term(std::ostringstream& os, bool& first, const Rational& c, const std::string& mon) {
    Rational a = c < 0 ? Rational(-c) : c;
    if (first) {
        if (c < 0) os << "-";
        first = false;
    } else {
        os << (c < 0 ? " - " : " + ");
    }
    if (mon.empty()) {
        os << rat_to_string(a);
    } else if (a == 1) {
        os << mon;
    } else {
        os << rat_to_string(a) << "*" << mon;
    }
}

std::string monomial_string(const std::string& var, long exp2) {
    if (exp2 == 0) return "";
    if (exp2 == 2) return var;
    return var + "^" + exp_string(exp2);
}

} // namespace

std::string to_string(const HalfExpLaurent& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) append_term(os, first, c, monomial_string(var, e));
    return os.str();
}

std::string to_string(const BivariateLaurent& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [xe, coeff] : p.terms()) {
        std::string xmon = monomial_string("X", xe);
        for (const auto& [ye, c] : coeff.terms()) {
            std::string ymon = monomial_string("Y", ye);
            std::string mon;
            if (!xmon.empty() && !ymon.empty()) mon = ymon + "*" + xmon;
            else mon = ymon + xmon;
            append_term(os, first, c, mon);
        }
    }
    return os.str();
}

} // namespace gksiegel
