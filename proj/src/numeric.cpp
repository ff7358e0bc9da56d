#include "gksiegel/numeric.hpp"

#include <sstream>

namespace gksiegel {

Int int_pow(const Int& base, long exp) {
    check_invariant(exp >= 0, "int_pow: negative exponent");
    Int r = 1, b = base;
    long e = exp;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Rational rat_pow(const Rational& base, long exp) {
    if (exp < 0) {
        check_invariant(base != 0, "rat_pow: zero base, negative exponent");
        return Rational(1) / rat_pow(base, -exp);
    }
    Rational r = 1, b = base;
    long e = exp;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

long ord_p(const Int& x, const Int& p) {
    check_invariant(x != 0, "ord_p of zero");
    Int t = x;
    long v = 0;
    while (t % p == 0) {
        t /= p;
        ++v;
    }
    return v;
}

long ord_p(const Rational& x, const Int& p) {
    check_invariant(x != 0, "ord_p of zero");
    return ord_p(numerator(x), p) - ord_p(denominator(x), p);
}

namespace {

Int mod_pow(Int base, Int exp, const Int& mod) {
    Int r = 1;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if (exp % 2 == 1) r = r * base % mod;
        base = base * base % mod;
        exp /= 2;
    }
    return r;
}

bool miller_rabin_round(const Int& n, const Int& a, const Int& d, long s) {
    Int x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    long s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    // Deterministic for n < 3.3e24, ample for desk-scale inputs.
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (!miller_rabin_round(n, a, d, s)) return false;
    }
    return true;
}

std::vector<std::pair<Int, long>> factorize(const Int& n, const Int& bound) {
    require(n != 0, "factorize: zero input");
    std::vector<std::pair<Int, long>> out;
    Int m = n < 0 ? Int(-n) : n;
    auto strip = [&](const Int& p) {
        long e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (Int p = 5; p <= bound && p * p <= m; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (m > 1) {
        if (is_probable_prime(m)) {
            out.emplace_back(m, 1);
        } else if (m <= bound * bound) {
            // trial division already covered sqrt(m), so m is prime; unreachable
            out.emplace_back(m, 1);
        } else {
            throw validation_error("factorize: composite cofactor " + m.str() +
                                   " beyond trial-division bound; raise the bound");
        }
    }
    return out;
}

int legendre(const Int& a, const Int& p) {
    check_invariant(p > 2, "legendre: p must be an odd prime");
    Int r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    Int s = mod_pow(r, (p - 1) / 2, p);
    return s == 1 ? 1 : -1;
}

SquareClass square_class(const Int& x, const Int& p) {
    check_invariant(x != 0, "square_class of zero");
    SquareClass sc;
    sc.v = ord_p(x, p);
    Int u = x / int_pow(p, sc.v);
    if (p == 2) {
        if (sc.v % 2 != 0) {
            sc.xi = 0;
        } else {
            Int m = u % 8;
            if (m < 0) m += 8;
            if (m == 1) sc.xi = 1;
            else if (m == 5) sc.xi = -1; // 5 mod 8: unramified quadratic class
            else sc.xi = 0;              // 3, 7 mod 8: ramified
        }
        return sc;
    }
    if (sc.v % 2 != 0) {
        sc.xi = 0;
    } else {
        sc.xi = legendre(u, p);
    }
    return sc;
}

long disc_ideal_ord(const Int& x, const Int& p) {
    SquareClass sc = square_class(x, p);
    if (sc.xi != 0) return 0;
    if (p != 2) return 1;
    if (sc.v % 2 != 0) return 3; // Q_2(sqrt(2u)): disc (8)
    return 2;                    // u = 3,7 mod 8: disc (4)
}

std::string to_decimal(const Rational& r, int digits) {
    if (r == 0) return "0";
    Int num = numerator(r), den = denominator(r);
    std::string sign = num < 0 ? "-" : "";
    if (num < 0) num = -num;
    Int ip = num / den;
    std::string istr = ip.str();
    std::ostringstream os;
    os << sign;
    if (ip > 0) {
        os << istr;
        int frac_digits = digits - static_cast<int>(istr.size());
        if (frac_digits > 0) {
            Int rem = num % den;
            if (rem != 0) {
                os << '.';
                for (int i = 0; i < frac_digits && rem != 0; ++i) {
                    rem *= 10;
                    os << (rem / den).str();
                    rem %= den;
                }
            }
        }
        return os.str();
    }
    // leading zeros before the first significant digit do not count
    os << "0.";
    Int rem = num % den;
    int emitted = 0;
    bool significant = false;
    while (emitted < digits && rem != 0) {
        rem *= 10;
        Int digit = rem / den;
        rem %= den;
        os << digit.str();
        if (digit != 0) significant = true;
        if (significant) ++emitted;
    }
    return os.str();
}

std::string rat_to_string(const Rational& r) {
    Int num = numerator(r), den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational rat_from_string(const std::string& s) {
    auto pos = s.find('/');
    try {
        if (pos == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, pos));
        Int den(s.substr(pos + 1));
        require(den != 0, "rational with zero denominator: " + s);
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw validation_error("bad rational literal '" + s + "'");
    }
}

} // namespace gksiegel
