#include "gksiegel/qexp.hpp"

namespace gksiegel {

namespace {

std::vector<Int> sigma_series(int k, int count) {
    std::vector<Int> s(count + 1, 0);
    for (int d = 1; d <= count; ++d) {
        Int dk = int_pow(d, k);
        for (int m = d; m <= count; m += d) s[m] += dk;
    }
    return s;
}

std::vector<Int> mul_trunc(const std::vector<Int>& a, const std::vector<Int>& b, int count) {
    std::vector<Int> c(count + 1, 0);
    for (int i = 0; i <= count; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= count; ++j) {
            if (b[j] == 0) continue;
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

// Dedekind eta without the q^{1/24} prefactor, by the pentagonal number series.
std::vector<Int> euler_product(int count) {
    std::vector<Int> f(count + 1, 0);
    f[0] = 1;
    for (long kk = 1;; ++kk) {
        long g1 = kk * (3 * kk - 1) / 2;
        long g2 = kk * (3 * kk + 1) / 2;
        if (g1 > count && g2 > count) break;
        Int sign = kk % 2 == 0 ? 1 : -1;
        if (g1 <= count) f[g1] += sign;
        if (g2 <= count) f[g2] += sign;
    }
    return f;
}

int kronecker2(const Int& a) {
    Int m = ((a % 8) + 8) % 8;
    if (m % 2 == 0) return 0;
    return (m == 1 || m == 7) ? 1 : -1;
}

} // namespace

std::vector<Int> weight18_qexp(int count) {
    auto sigma5 = sigma_series(5, count);
    std::vector<Int> e6(count + 1, 0);
    e6[0] = 1;
    for (int m = 1; m <= count; ++m) e6[m] = -504 * sigma5[m];
    auto f = euler_product(count);
    std::vector<Int> f24 = {1};
    f24.resize(count + 1, 0);
    std::vector<Int> pw = f;
    int e = 24;
    while (e > 0) {
        if (e & 1) f24 = mul_trunc(f24, pw, count);
        e >>= 1;
        if (e > 0) pw = mul_trunc(pw, pw, count);
    }
    std::vector<Int> delta(count + 1, 0);
    for (int m = 1; m <= count; ++m) delta[m] = f24[m - 1];
    auto prod = mul_trunc(e6, delta, count);
    std::vector<Int> out(count + 1, 0);
    for (int m = 1; m <= count; ++m) out[m] = prod[m];
    check_invariant(out[1] == 1 && out[2] == -528 && out[3] == -4284,
                    "weight18_qexp: initial coefficients off");
    check_invariant(out[6] == out[2] * out[3], "weight18_qexp: multiplicativity failed");
    return out;
}

std::map<Int, Rational> kohnen_plus_table_k10(int count) {
    int work = std::max(count, 40) + 10;
    // theta(z) and the odd-divisor weight-2 form span M_{19/2}(Gamma_0(4))
    // through the five monomials theta^{19-4v} F^v.
    std::vector<Int> theta(work + 1, 0);
    theta[0] = 1;
    for (int m = 1; m * m <= work; ++m) theta[m * m] = 2;
    std::vector<Int> F(work + 1, 0);
    auto sigma1 = sigma_series(1, work);
    for (int m = 1; m <= work; m += 2) F[m] = sigma1[m];
    std::vector<std::vector<Int>> basis;
    for (int v = 0; v <= 4; ++v) {
        std::vector<Int> b = {1};
        b.resize(work + 1, 0);
        for (int i = 0; i < 19 - 4 * v; ++i) b = mul_trunc(b, theta, work);
        for (int i = 0; i < v; ++i) b = mul_trunc(b, F, work);
        basis.push_back(b);
    }
    // plus-space support for n = 2 is m = 0, 3 mod 4; cuspidality pins c(0) = 0
    std::vector<std::vector<Rational>> rows;
    for (int m = 0; m <= work; ++m) {
        bool constrain = (m == 0) || (m % 4 == 1) || (m % 4 == 2);
        if (!constrain) continue;
        std::vector<Rational> row(5);
        for (int v = 0; v < 5; ++v) row[v] = Rational(basis[v][m]);
        rows.push_back(row);
    }
    // exact kernel of the constraint matrix
    int cols = 5;
    std::vector<std::vector<Rational>> mat = rows;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < cols && rank < static_cast<int>(mat.size()); ++c) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(mat.size()); ++r)
            if (mat[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(mat[rank], mat[piv]);
        Rational lead = mat[rank][c];
        for (int cc = 0; cc < cols; ++cc) mat[rank][cc] /= lead;
        for (int r = 0; r < static_cast<int>(mat.size()); ++r) {
            if (r == rank || mat[r][c] == 0) continue;
            Rational f = mat[r][c];
            for (int cc = 0; cc < cols; ++cc) mat[r][cc] -= f * mat[rank][cc];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    check_invariant(rank == 4, "kohnen_plus_table_k10: expected a one-dimensional kernel");
    int free_col = -1;
    for (int c = 0; c < cols; ++c)
        if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) free_col = c;
    std::vector<Rational> x(cols, 0);
    x[free_col] = 1;
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = -mat[r][free_col];
    std::vector<Rational> h(work + 1, 0);
    for (int m = 0; m <= work; ++m)
        for (int v = 0; v < 5; ++v) h[m] += x[v] * Rational(basis[v][m]);
    check_invariant(h[3] != 0, "kohnen_plus_table_k10: vanishing leading coefficient");
    Rational scale = h[3];
    for (auto& v : h) v /= scale;
    for (int m = 0; m <= work; ++m)
        check_invariant(!((m % 4 == 1 || m % 4 == 2 || m == 0) && h[m] != 0),
                        "kohnen_plus_table_k10: plus-space support violated");

    // Hecke validation: T(p^2) eigenvalue must match the Shimura-corresponding
    // weight-18 eigenvalue; kappa = 9 + 1/2 here.
    auto cf = weight18_qexp(10);
    for (long p : {2L, 3L}) {
        Int lambda = cf[p];
        long p2 = p * p;
        for (int m = 1; m * p2 <= work; ++m) {
            if (!(m % 4 == 0 || m % 4 == 3)) continue;
            int chi;
            if (p == 2) chi = kronecker2(Int(-m));
            else chi = (m % p == 0) ? 0 : legendre(Int(-m), Int(p));
            Rational lhs = h[m * p2] + Rational(chi) * Rational(int_pow(p, 8)) * h[m] +
                           (m % p2 == 0 ? Rational(int_pow(p, 17)) * h[m / p2] : Rational(0));
            check_invariant(lhs == Rational(lambda) * h[m],
                            "kohnen_plus_table_k10: Hecke eigenvalue check failed");
        }
    }
    std::map<Int, Rational> out;
    for (int m = 1; m <= count; ++m)
        if (h[m] != 0 || (m % 4 == 0 || m % 4 == 3)) out[Int(m)] = h[m];
    return out;
}

EigenformData genuine_form_k10(int count_h, int count_f) {
    EigenformData d;
    d.k = 10;
    d.n = 2;
    d.cH = kohnen_plus_table_k10(count_h);
    auto cf = weight18_qexp(count_f);
    for (int p = 2; p <= count_f; ++p) {
        if (!is_probable_prime(Int(p))) continue;
        d.cF[Int(p)] = Rational(cf[p]);
    }
    return d;
}

} // namespace gksiegel
