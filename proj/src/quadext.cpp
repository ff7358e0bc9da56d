#include "gksiegel/quadext.hpp"

#include <boost/multiprecision/integer.hpp>
#include <sstream>

namespace gksiegel {

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    if (r == 0) return Rational(0);
    Int n = numerator(r), d = denominator(r);
    Int sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

QuadExt::QuadExt(long d, const Rational& a, const Rational& b) : d_(d), a_(a), b_(b) {
    check_invariant(d >= 1, "QuadExt: radicand must be positive");
    if (d_ == 1) {
        a_ += b_;
        b_ = 0;
    } else if (b_ == 0) {
        d_ = 1;
    }
}

QuadExt QuadExt::sqrt_of(long d) { return QuadExt(d, 0, 1); }

void QuadExt::match_field(const QuadExt& o, long& d) const {
    if (d_ == o.d_ || o.b_ == 0) {
        d = d_;
    } else if (b_ == 0) {
        d = o.d_;
    } else {
        throw invariant_error("QuadExt: mixed radicands " + std::to_string(d_) + " and " +
                              std::to_string(o.d_));
    }
}

QuadExt QuadExt::operator+(const QuadExt& o) const {
    long d;
    match_field(o, d);
    return QuadExt(d, a_ + o.a_, b_ + o.b_);
}

QuadExt QuadExt::operator-(const QuadExt& o) const {
    long d;
    match_field(o, d);
    return QuadExt(d, a_ - o.a_, b_ - o.b_);
}

QuadExt QuadExt::operator-() const { return QuadExt(d_, -a_, -b_); }

QuadExt QuadExt::operator*(const QuadExt& o) const {
    long d;
    match_field(o, d);
    return QuadExt(d, a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_);
}

QuadExt QuadExt::inverse() const {
    Rational n = norm();
    check_invariant(n != 0, "QuadExt: inverse of zero");
    return QuadExt(d_, a_ / n, -b_ / n);
}

bool QuadExt::operator==(const QuadExt& o) const {
    if (b_ == 0 && o.b_ == 0) return a_ == o.a_;
    return d_ == o.d_ && a_ == o.a_ && b_ == o.b_;
}

QuadExt QuadExt::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    QuadExt r(Rational(1)), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

int QuadExt::sign() const {
    if (b_ == 0) return a_ == 0 ? 0 : (a_ > 0 ? 1 : -1);
    if (a_ == 0) return b_ > 0 ? 1 : -1;
    if (a_ > 0 && b_ > 0) return 1;
    if (a_ < 0 && b_ < 0) return -1;
    // opposite signs: compare a^2 against b^2*d
    Rational lhs = a_ * a_, rhs = b_ * b_ * d_;
    if (lhs == rhs) return 0;
    bool rational_dominates = lhs > rhs;
    if (rational_dominates) return a_ > 0 ? 1 : -1;
    return b_ > 0 ? 1 : -1;
}

std::optional<QuadExt> QuadExt::sqrt_exact() const {
    if (sign() < 0) return std::nullopt;
    if (b_ == 0) {
        if (auto s = rational_sqrt(a_)) return QuadExt(*s);
        // maybe a = v^2 * d for the ambient radicand
        if (d_ > 1) {
            if (auto v = rational_sqrt(a_ / d_)) return QuadExt(d_, 0, *v);
        }
        return std::nullopt;
    }
    // (u + v sqrt(d))^2 = a + b sqrt(d): u^2 = (a +- sqrt(a^2 - b^2 d)) / 2
    auto disc = rational_sqrt(norm());
    if (!disc) return std::nullopt;
    for (int s : {1, -1}) {
        Rational u2 = (a_ + Rational(s) * (*disc)) / 2;
        auto u = rational_sqrt(u2);
        if (!u || *u == 0) continue;
        Rational v = b_ / (2 * (*u));
        QuadExt cand(d_, *u, v);
        if (cand * cand == *this) return cand;
    }
    return std::nullopt;
}

std::string QuadExt::str() const {
    if (b_ == 0) return rat_to_string(a_);
    std::ostringstream os;
    if (a_ != 0) os << rat_to_string(a_) << (b_ > 0 ? " + " : " - ");
    else if (b_ < 0) os << "-";
    Rational ab = b_ < 0 ? Rational(-b_) : b_;
    if (ab != 1) os << rat_to_string(ab) << "*";
    os << "sqrt(" << d_ << ")";
    return os.str();
}

QuadExt half_power(long q, long e2) {
    long whole = e2 / 2;
    long rem = e2 - 2 * whole;
    if (rem < 0) {
        rem += 2;
        whole -= 1;
    }
    Rational base = rat_pow(Rational(q), whole);
    if (rem == 0) return QuadExt(base);
    return QuadExt(q, 0, base); // q^whole * sqrt(q)
}

MultiQuad MultiQuad::radical(const Int& squarefree_r, const Rational& c) {
    MultiQuad m;
    if (c != 0) m.terms_[squarefree_r] = c;
    return m;
}

MultiQuad MultiQuad::from_quadext(const QuadExt& q) {
    MultiQuad m;
    if (q.rational_part() != 0) m.terms_[1] = q.rational_part();
    if (q.radical_part() != 0) m.add_term(Int(q.d()), q.radical_part());
    return m;
}

bool MultiQuad::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational MultiQuad::rational_value() const {
    check_invariant(is_rational(), "MultiQuad: radical support nonempty");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

void MultiQuad::add_term(const Int& r, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(r);
    if (it == terms_.end()) {
        terms_[r] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiQuad MultiQuad::operator+(const MultiQuad& o) const {
    MultiQuad r = *this;
    for (const auto& [rad, c] : o.terms_) r.add_term(rad, c);
    return r;
}

MultiQuad MultiQuad::operator*(const MultiQuad& o) const {
    MultiQuad out;
    for (const auto& [r1, c1] : terms_) {
        for (const auto& [r2, c2] : o.terms_) {
            // sqrt(r1)*sqrt(r2) = g*sqrt((r1/g)*(r2/g)) with g = gcd
            Int g = boost::multiprecision::gcd(r1, r2);
            Int rad = (r1 / g) * (r2 / g);
            out.add_term(rad, c1 * c2 * Rational(g));
        }
    }
    return out;
}

std::string MultiQuad::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [r, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_to_string(c);
        if (r != 1) os << "*sqrt(" << r.str() << ")";
    }
    return os.str();
}

} // namespace gksiegel
