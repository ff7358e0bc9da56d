#include "gksiegel/egk.hpp"

#include <sstream>

namespace gksiegel {

std::vector<long> ei_ledger(const std::vector<long>& a) {
    std::vector<long> e(a.size());
    long sum = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        sum += a[i];
        e[i] = (i % 2 == 0) ? sum : 2 * (sum / 2); // i is 0-based; odd position = even index
    }
    return e;
}

NaiveEGKDatum validate_negk(const std::vector<long>& a, const std::vector<int>& eps) {
    require(a.size() == eps.size() && !a.empty(), "naive EGK datum: length mismatch or empty");
    int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) {
        require(a[i] >= 0, "N1: a_i must be nonnegative");
        require(eps[i] == 0 || eps[i] == 1 || eps[i] == -1, "eps_i must lie in {-1,0,1}");
        if (i > 0) require(a[i] >= a[i - 1], "N1: a must be nondecreasing");
    }
    long sum = 0;
    for (int i = 0; i < n; ++i) {
        sum += a[i];
        int idx = i + 1;
        if (idx % 2 == 0) {
            require((eps[i] != 0) == (sum % 2 == 0),
                    "N2: eps_i must be nonzero exactly when a_1+...+a_i is even");
        } else {
            require(eps[i] != 0, "N3: eps_i must be nonzero for odd i");
        }
    }
    require(eps[0] == 1, "N4: eps_1 must be 1");
    long prefix = a[0];
    for (int i = 2; i < n; i += 2) { // 0-based even position = odd index i+1 >= 3
        prefix += a[i - 1];
        if (prefix % 2 == 0) {
            int forced = ((a[i] + a[i - 1]) % 2 == 0 ? 1 : eps[i - 1]) * eps[i - 2];
            require(eps[i] == forced, "N5: eps_i is forced for odd i with even preceding sum");
        }
        prefix += a[i];
    }
    NaiveEGKDatum H;
    H.a = a;
    H.eps = eps;
    return H;
}

BivariateLaurent g_to_bivariate(const GPoly& g) {
    BivariateLaurent p;
    for (size_t i = 0; i < g.coeffs.size(); ++i) p.add_term(2 * static_cast<long>(i), g.coeffs[i]);
    return p;
}

BivariateLaurent f_of(const GPoly& g) { return g_to_bivariate(g).shifted_x(-g.eN); }

namespace {

GPoly base_case(long a1) {
    GPoly g;
    g.eN = a1;
    g.coeffs.assign(a1 + 1, HalfExpLaurent(Rational(1)));
    return g;
}

const HalfExpLaurent& coeff_or_zero(const GPoly& g, long i) {
    static const HalfExpLaurent zero;
    if (i < 0 || i > g.eN) return zero;
    return g.coeffs[i];
}

// One induction step computed from the power-series expansion of the step
// identity; the sums run over the previous coefficients b_i with b_i = 0
// outside [0, e_{m-1}].
GPoly step_even(const GPoly& prev, long eC, int eps) {
    long eP = prev.eN;
    GPoly g;
    g.eN = eC;
    g.coeffs.assign(eC + 1, HalfExpLaurent());
    for (long l = 0; l <= eC; ++l) {
        HalfExpLaurent acc;
        // (1 - eps Y^{-1} X) G'(Y, YX) / (1 - X^2): i + 2j = l resp. l - 1
        for (long i = l % 2; i <= std::min(l, eP); i += 2)
            acc = acc + coeff_or_zero(prev, i).shifted(2 * i);
        if (eps != 0 && l >= 1) {
            for (long i = (l - 1) % 2; i <= std::min(l - 1, eP); i += 2)
                acc = acc - coeff_or_zero(prev, i).shifted(2 * i - 2).scaled(Rational(eps));
        }
        // - X^{eC+2} (1 - eps Y^{-1} X^{-1}) G'(Y, YX^{-1}) / (1 - X^2):
        // eC + 2 - i + 2j = l resp. eC + 1 - i + 2j = l
        for (long i = eC + 2 - l; i <= eP; i += 2)
            acc = acc - coeff_or_zero(prev, i).shifted(2 * i);
        if (eps != 0) {
            for (long i = eC + 1 - l; i <= eP; i += 2)
                acc = acc + coeff_or_zero(prev, i).shifted(2 * i - 2).scaled(Rational(eps));
        }
        g.coeffs[l] = acc;
    }
    return g;
}

GPoly step_odd(const GPoly& prev, long eC, int eps, int eps_prev) {
    long eP = prev.eN;
    GPoly g;
    g.eN = eC;
    g.coeffs.assign(eC + 1, HalfExpLaurent());
    if (eps_prev == 0) {
        // G = G'(Y, YX) + eps X^{eC} G'(Y, YX^{-1})
        for (long l = 0; l <= eC; ++l) {
            HalfExpLaurent acc;
            if (l <= eP) acc = acc + coeff_or_zero(prev, l).shifted(2 * l);
            long i = eC - l;
            if (i >= 0 && i <= eP)
                acc = acc + coeff_or_zero(prev, i).shifted(2 * i).scaled(Rational(eps));
            g.coeffs[l] = acc;
        }
        return g;
    }
    // G = G'(Y, YX)/(1 - e'X) - eps e' X^{eC+1} G'(Y, YX^{-1})/(1 - e'X)
    auto sgn = [&](long e) { return e % 2 == 0 ? 1 : eps_prev; };
    for (long l = 0; l <= eC; ++l) {
        HalfExpLaurent acc;
        for (long i = 0; i <= std::min(l, eP); ++i)
            acc = acc + coeff_or_zero(prev, i).shifted(2 * i).scaled(Rational(sgn(l - i)));
        for (long i = std::max(0L, eC + 1 - l); i <= eP; ++i)
            acc = acc -
                  coeff_or_zero(prev, i).shifted(2 * i).scaled(Rational(eps * sgn(l + i - eC)));
        g.coeffs[l] = acc;
    }
    return g;
}

} // namespace

GPoly f_poly(const NaiveEGKDatum& H) {
    GPoly g = base_case(H.a[0]);
    auto ledger = ei_ledger(H.a);
    for (int m = 2; m <= H.n(); ++m) {
        long eC = ledger[m - 1];
        if (m % 2 == 0) {
            g = step_even(g, eC, H.eps[m - 1]);
        } else {
            g = step_odd(g, eC, H.eps[m - 1], H.eps[m - 2]);
        }
    }
    return g;
}

namespace {

BivariateLaurent f_base_bivariate(long a1) {
    BivariateLaurent f;
    for (long i = 0; i <= a1; ++i) f.add_term(2 * i - a1, HalfExpLaurent(Rational(1)));
    return f;
}

} // namespace

GPoly f_poly_series(const NaiveEGKDatum& H) {
    auto ledger = ei_ledger(H.a);
    BivariateLaurent F = f_base_bivariate(H.a[0]);
    for (int m = 2; m <= H.n(); ++m) {
        long eC = ledger[m - 1];
        long eP = ledger[m - 2];
        bool even = m % 2 == 0;
        int xi = even ? H.eps[m - 1] : H.eps[m - 2];
        int zeta = even ? 1 : H.eps[m - 1];
        BivariateLaurent N1, D1;
        if (even) {
            // C(e, e~, xi) = Y^{e~/2} X^{-(e-e~)/2 - 1} (1 - xi Y^{-1} X) / (X^{-1} - X)
            N1 = BivariateLaurent::monomial(-(eC - eP) - 2, eP, 1);
            if (xi != 0) {
                BivariateLaurent tail = BivariateLaurent::monomial(2, -2, Rational(-xi));
                N1 = N1 * (BivariateLaurent(Rational(1)) + tail);
            }
            D1 = BivariateLaurent::monomial(-2, 0, 1) - BivariateLaurent::monomial(2, 0, 1);
        } else {
            // D(e, e~, xi) = Y^{e~/2} X^{-(e-e~)/2} / (1 - xi X)
            N1 = BivariateLaurent::monomial(-(eC - eP), eP, 1);
            D1 = BivariateLaurent(Rational(1));
            if (xi != 0) D1 = D1 - BivariateLaurent::monomial(2, 0, Rational(xi));
        }
        BivariateLaurent N2 = N1.substituted(SubstRule::XtoXinv);
        BivariateLaurent D2 = D1.substituted(SubstRule::XtoXinv);
        BivariateLaurent F1 = F.substituted(SubstRule::XtoYX);
        BivariateLaurent F2 = F.substituted(SubstRule::XtoYXinv);
        BivariateLaurent numer = N1 * F1 * D2 + (N2 * F2 * D1).scaled(Rational(zeta));
        BivariateLaurent denom = D1 * D2;
        BivariateLaurent quotient = series_expand_quotient(numer, denom, eC + 1);
        check_invariant(quotient * denom == numer, "f_poly_series: division left a remainder");
        F = quotient;
        check_invariant(F.is_zero() || (F.lowest_x() >= -eC && F.highest_x() <= eC),
                        "f_poly_series: support exceeds [-e_m/2, e_m/2]");
    }
    GPoly g;
    g.eN = ledger.back();
    g.coeffs.assign(g.eN + 1, HalfExpLaurent());
    for (const auto& [xe, c] : F.terms()) {
        long shifted = xe + g.eN;
        check_invariant(shifted % 2 == 0 && shifted >= 0 && shifted <= 2 * g.eN,
                        "f_poly_series: non-integral exponent in G");
        g.coeffs[shifted / 2] = c;
    }
    return g;
}

BivariateLaurent functional_eq_defect(const NaiveEGKDatum& H) {
    BivariateLaurent F = f_of(f_poly(H));
    int zeta = H.n() % 2 == 0 ? 1 : H.eps[H.n() - 1];
    return F.substituted(SubstRule::XtoXinv) - F.scaled(Rational(zeta));
}

QuadExt coeff_at_sqrtq(const HalfExpLaurent& c, long q) {
    QuadExt v;
    for (const auto& [e2, r] : c.terms()) {
        check_invariant(e2 % 2 == 0, "coeff_at_sqrtq: half-integral Y exponent in G coefficient");
        v = v + half_power(q, e2 / 2) * QuadExt(r);
    }
    return v;
}

QuadExt specialize_t(const GPoly& g, long q, const QuadExt& t) {
    require(g.eN % 2 == 0, "specialize_t: odd X-support, use the explicit-value route");
    long half = g.eN / 2;
    for (long i = 0; i <= g.eN; ++i)
        check_invariant(g.coeffs[i] == g.coeffs[g.eN - i],
                        "specialize_t: non-palindromic coefficients");
    QuadExt value = coeff_at_sqrtq(g.coeffs[half], q);
    // X^j + X^{-j} = P_j(t), P_0 = 2, P_1 = t
    QuadExt p_prev(Rational(2)), p_cur = t;
    for (long j = 1; j <= half; ++j) {
        value = value + coeff_at_sqrtq(g.coeffs[half - j], q) * p_cur;
        QuadExt next = t * p_cur - p_prev;
        p_prev = p_cur;
        p_cur = next;
    }
    return value;
}

QuadExt specialize_x(const GPoly& g, long q, const QuadExt& x) {
    QuadExt sum;
    for (long i = 0; i <= g.eN; ++i)
        sum = sum + coeff_at_sqrtq(g.coeffs[i], q) * x.pow(i);
    if (g.eN % 2 == 0) return sum * x.pow(-g.eN / 2);
    auto s = x.sqrt_exact();
    require(s.has_value(), "specialize_x: odd X-support needs an exact square root of x");
    return sum * s->pow(-g.eN);
}

QuadExt abs_sq_on_circle(const GPoly& g, long q, const Rational& w) {
    // X = e^{i theta}, w = 2 cos(theta/2); doubled exponent d means X^{d/2}.
    // 2 cos(d theta/2) = P_d(w), sin(d theta/2) = sin(theta/2) Q_d(w).
    long e = g.eN;
    std::vector<QuadExt> A(2 * e + 1); // index d + e, d = 2i - e
    for (long i = 0; i <= e; ++i) A[2 * i] = coeff_at_sqrtq(g.coeffs[i], q);
    QuadExt re, im_over_sin;
    QuadExt wq{Rational(w)};
    std::vector<QuadExt> P(e + 1), Q(e + 1);
    for (long d = 0; d <= e; ++d) {
        if (d == 0) {
            P[d] = QuadExt(Rational(2));
            Q[d] = QuadExt(Rational(0));
        } else if (d == 1) {
            P[d] = wq;
            Q[d] = QuadExt(Rational(1));
        } else {
            P[d] = wq * P[d - 1] - P[d - 2];
            Q[d] = wq * Q[d - 1] - Q[d - 2];
        }
    }
    for (long d = -e; d <= e; d += 2) {
        const QuadExt& Ad = A[d + e];
        if (Ad.is_zero()) continue;
        long ad = d < 0 ? -d : d;
        // X^{d/2} = cos(d theta/2) + i sin(d theta/2)
        re = re + Ad * P[ad] * QuadExt(Rational(1, 2));
        if (d > 0) im_over_sin = im_over_sin + Ad * Q[ad];
        else if (d < 0) im_over_sin = im_over_sin - Ad * Q[ad];
    }
    QuadExt sin_sq{(Rational(4) - w * w) / 4};
    return re * re + im_over_sin * im_over_sin * sin_sq;
}

BoundCheckReport bound_check(const NaiveEGKDatum& H, long q, const Rational& r0) {
    BoundCheckReport rep;
    GPoly g = f_poly(H);
    auto ledger = ei_ledger(H.a);
    int n = H.n();
    long e = g.eN;

    long tail_sum = 0; // e_1 + ... + e_{n-1}
    Rational tail_count = 1;
    for (int l = 0; l + 1 < n; ++l) {
        tail_sum += ledger[l];
        tail_count *= Rational(ledger[l] + 1);
    }
    QuadExt bound57 = half_power(q, tail_sum) * QuadExt(tail_count);
    for (long i = 0; i <= e; ++i) {
        QuadExt v = coeff_at_sqrtq(g.coeffs[i], q).abs();
        ++rep.coeff_checks;
        if (!(v <= bound57)) ++rep.coeff_violations;
    }

    // value bound: q^{e_n r0 / 2} (e_n + 1) * bound57, compared squared
    Rational e_r0 = Rational(e) * r0; // exponent of q in RHS^2 is e*r0
    check_invariant(denominator(e_r0 * 2) == 1, "bound_check: r0 must be a half-integer");
    QuadExt rhs2_common = half_power(q, static_cast<long>(e_r0 * 2)); // q^{e*r0}
    QuadExt bound58_sq = rhs2_common * QuadExt(Rational(e + 1) * Rational(e + 1)) * bound57 * bound57;
    QuadExt bound59_sq;
    bool even_n = n % 2 == 0;
    if (even_n) {
        Rational prod_count = tail_count * Rational(e + 1);
        bound59_sq = rhs2_common * half_power(q, (n - 1) * e) * QuadExt(prod_count * prod_count);
    }
    auto check_value_sq = [&](const QuadExt& v2) {
        ++rep.value_checks;
        if (!(v2 <= bound58_sq)) ++rep.value_violations;
        if (even_n) {
            ++rep.value_checks;
            if (!(v2 <= bound59_sq)) ++rep.value_violations;
        }
    };
    for (int num = -4; num <= 4; ++num) {
        QuadExt v2 = abs_sq_on_circle(g, q, Rational(num, 2));
        check_value_sq(v2);
    }
    if (even_n && r0 > 0) {
        // real axis samples X = +-q^{r0} for half-integral r0
        long r0_doubled = static_cast<long>(r0 * 2);
        for (int sgn : {1, -1}) {
            QuadExt x = half_power(q, r0_doubled) * QuadExt(Rational(sgn));
            QuadExt v = specialize_x(g, q, x);
            check_value_sq(v * v);
        }
    }
    return rep;
}

std::string datum_to_string(const NaiveEGKDatum& H) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < H.n(); ++i) os << (i ? "," : "") << H.a[i];
    os << "; ";
    for (int i = 0; i < H.n(); ++i) os << (i ? "," : "") << H.eps[i];
    os << ")";
    return os.str();
}

} // namespace gksiegel
