#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gksiegel/corpus.hpp"
#include "gksiegel/laurent.hpp"
#include "gksiegel/quadext.hpp"

using namespace gksiegel;

namespace {

BivariateLaurent mono(long x2, long y2, long num, long den = 1) {
    return BivariateLaurent::monomial(x2, y2, Rational(num, den));
}

BivariateLaurent random_poly(DetRng& rng) {
    BivariateLaurent p;
    int terms = static_cast<int>(rng.range(0, 5));
    for (int t = 0; t < terms; ++t) {
        long xe = rng.range(-6, 6);
        long ye = rng.range(-6, 6);
        long num = rng.range(-9, 9);
        long den = rng.range(1, 4);
        p = p + mono(xe, ye, num, den);
    }
    return p;
}

} // namespace

TEST_CASE("half exponent product") {
    // X^(1/2) * X^(1/2) = X
    auto x_half = mono(1, 0, 1);
    CHECK(x_half * x_half == mono(2, 0, 1));
}

TEST_CASE("additive identity") {
    auto p = mono(3, -1, 7, 2) + mono(0, 0, 1);
    CHECK(p + BivariateLaurent() == p);
}

TEST_CASE("binomial expansion of (X^(-1/2) + X^(1/2))^2") {
    auto s = mono(-1, 0, 1) + mono(1, 0, 1);
    auto sq = s * s;
    auto expected = mono(-2, 0, 1) + mono(0, 0, 2) + mono(2, 0, 1);
    CHECK(sq == expected);
}

TEST_CASE("ring axioms on random inputs") {
    DetRng rng(20240601);
    for (int it = 0; it < 60; ++it) {
        auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("substitution rules") {
    // X^(1/2) under X -> X^{-1}
    CHECK(mono(1, 0, 1).substituted(SubstRule::XtoXinv) == mono(-1, 0, 1));
    // X under X -> YX
    CHECK(mono(2, 0, 1).substituted(SubstRule::XtoYX) == mono(2, 2, 1));
    // Y X^{-1} under X -> Y X^{-1} gives X
    CHECK(mono(-2, 2, 1).substituted(SubstRule::XtoYXinv) == mono(2, 0, 1));
}

TEST_CASE("geometric series expansion") {
    BivariateLaurent one(Rational(1));
    auto denom = one - mono(2, 0, 1); // 1 - X
    auto series = series_expand_quotient(one, denom, 6);
    auto expected = one + mono(2, 0, 1) + mono(4, 0, 1) + mono(6, 0, 1);
    CHECK(series == expected);
}

TEST_CASE("expansion with zero epsilon is exact") {
    BivariateLaurent one(Rational(1));
    CHECK(series_expand_quotient(one, one, 3) == one);
}

TEST_CASE("exact division (1 - X^2) / (1 - X)") {
    BivariateLaurent one(Rational(1));
    auto numer = one - mono(4, 0, 1);
    auto denom = one - mono(2, 0, 1);
    auto q = series_expand_quotient(numer, denom, 10);
    CHECK(q == one + mono(2, 0, 1));
}

TEST_CASE("quotient recovers factor up to truncation") {
    DetRng rng(7);
    for (int it = 0; it < 40; ++it) {
        auto p = random_poly(rng);
        auto q = random_poly(rng) + mono(0, 0, 1); // invertible lowest term more likely
        long le;
        Rational lc;
        if (q.is_zero() || !q.terms().begin()->second.as_monomial(le, lc)) continue;
        auto quotient = series_expand_quotient(p * q, q, p.is_zero() ? 0 : p.highest_x());
        CHECK(quotient == p);
    }
}

TEST_CASE("quadext arithmetic and signs") {
    QuadExt r2 = QuadExt::sqrt_of(2);
    CHECK((r2 * r2) == QuadExt(Rational(2)));
    QuadExt one_plus = QuadExt(2, 1, 1);
    QuadExt one_minus = QuadExt(2, 1, -1);
    CHECK(one_plus * one_minus == QuadExt(Rational(-1)));
    CHECK(one_minus.sign() < 0); // 1 - sqrt(2) < 0
    CHECK(one_plus.sign() > 0);
    CHECK(QuadExt(2, -3, 2).sign() < 0);  // 2 sqrt(2) < 3
    CHECK(QuadExt(2, -1, 1).sign() > 0);  // sqrt(2) > 1
    CHECK(one_plus.inverse() * one_plus == QuadExt(Rational(1)));
}

TEST_CASE("quadext exact sqrt") {
    QuadExt v = QuadExt(3, 7, 4); // (2 + sqrt(3))^2 = 7 + 4 sqrt(3)
    auto s = v.sqrt_exact();
    REQUIRE(s.has_value());
    CHECK((*s) * (*s) == v);
    CHECK_FALSE(QuadExt(3, 5, 1).sqrt_exact().has_value());
}

TEST_CASE("multiquad multiplication") {
    auto r2 = MultiQuad::radical(2, 1);
    auto r3 = MultiQuad::radical(3, 1);
    CHECK((r2 * r2).rational_value() == 2);
    auto r6 = r2 * r3;
    CHECK(r6.terms().size() == 1);
    CHECK(r6.terms().begin()->first == 6);
    // (1 + sqrt 2)(1 - sqrt 2) = -1
    auto a = MultiQuad(Rational(1)) + MultiQuad::radical(2, 1);
    auto b = MultiQuad(Rational(1)) + MultiQuad::radical(2, -1);
    CHECK((a * b).rational_value() == -1);
}

TEST_CASE("multiquad is commutative and associative, keys squarefree") {
    DetRng rng(99);
    auto rand_mq = [&]() {
        MultiQuad m(Rational(rng.range(-3, 3)));
        long rads[] = {1, 2, 3, 5, 6, 7, 10};
        for (int t = 0; t < 3; ++t)
            m = m + MultiQuad::radical(rads[rng.range(0, 6)], Rational(rng.range(-4, 4)));
        return m;
    };
    for (int it = 0; it < 50; ++it) {
        auto a = rand_mq(), b = rand_mq(), c = rand_mq();
        auto ab = a * b;
        CHECK(ab.terms() == (b * a).terms());
        CHECK(((a * b) * c).terms() == (a * (b * c)).terms());
        for (const auto& [r, cf] : ab.terms()) {
            for (long s = 2; s * s <= r; ++s) CHECK(r % (s * s) != 0);
        }
    }
}

TEST_CASE("canonical text form") {
    auto p = mono(-2, 0, 1) + mono(0, 0, 2) + mono(1, 1, -3, 2);
    CHECK(to_string(p) == "X^-1 + 2 - 3/2*Y^(1/2)*X^(1/2)");
}
