#include "gksiegel/siegel.hpp"

#include <algorithm>
#include <array>

#include "gksiegel/parallel.hpp"

namespace gksiegel {

namespace {

long long ll_pow(long long b, long e) {
    long long r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

// Elementary divisor valuations of a symmetric matrix over Z/p^m, capped at m.
void smith_valuations(std::array<std::array<long long, 4>, 4> W, int n, long long p, long m,
                      long long pm, const std::vector<long long>& inv_table,
                      std::array<long, 4>& out) {
    auto val = [&](long long x) {
        if (x == 0) return m;
        long v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    };
    for (int k = 0; k < n; ++k) out[k] = m;
    for (int k = 0; k < n; ++k) {
        int bi = -1, bj = -1;
        long bestv = m;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) {
                long v = val(W[i][j]);
                if (v < bestv) {
                    bestv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) return; // remaining block is zero mod p^m
        if (bi != k)
            for (int j = 0; j < n; ++j) std::swap(W[bi][j], W[k][j]);
        if (bj != k)
            for (int i = 0; i < n; ++i) std::swap(W[i][bj], W[i][k]);
        out[k] = bestv;
        long long pv = ll_pow(p, bestv);
        long long rem = pm / pv;
        long long unit = (W[k][k] / pv) % rem;
        long long uinv = inv_table[unit % pm] % rem;
        for (int r = k + 1; r < n; ++r) {
            if (W[r][k] % pm == 0) continue;
            long long c = (W[r][k] / pv) % rem * uinv % rem;
            for (int j = k; j < n; ++j) W[r][j] = ((W[r][j] - c % pm * (W[k][j] % pm)) % pm + pm) % pm;
        }
        for (int cgt = k + 1; cgt < n; ++cgt) {
            if (W[k][cgt] % pm == 0) continue;
            long long c = (W[k][cgt] / pv) % rem * uinv % rem;
            for (int i = k; i < n; ++i) W[i][cgt] = ((W[i][cgt] - c % pm * (W[i][k] % pm)) % pm + pm) % pm;
        }
    }
}

} // namespace

CharacterSums character_sums(const HalfIntegralMatrix& B, const Int& p, long m,
                             long long budget, int threads) {
    require(is_probable_prime(p), "character_sums: p is not prime");
    require(m >= 1, "character_sums: level must be positive");
    require(p < 1000, "character_sums: prime too large for enumeration");
    int n = B.n;
    require(n <= 4, "character_sums: supported up to n = 4");
    long long pl = static_cast<long long>(p);
    long long pm = ll_pow(pl, m);
    int cells = n * (n + 1) / 2;
    long long total = 1;
    for (int i = 0; i < cells; ++i) {
        total *= pm;
        if (total > budget) throw budget_error("character_sums: enumeration exceeds budget");
    }

    // trace coefficients: tr(BT) = sum b_ii T_ii + sum_{i<j} (2 b_ij) T_ij
    std::vector<long long> coeff(cells);
    std::vector<std::pair<int, int>> cell_pos(cells);
    {
        int c = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Int v = i == j ? B.at(i, i) / 2 : B.at(i, j);
                v %= pm;
                if (v < 0) v += pm;
                coeff[c] = static_cast<long long>(v);
                cell_pos[c] = {i, j};
                ++c;
            }
    }
    std::vector<long long> inv_table(pm, 0);
    for (long long u = 1; u < pm; ++u) {
        if (u % pl == 0) continue;
        if (inv_table[u] != 0) continue;
        // extended Euclid
        long long a = u, b = pm, x0 = 0, x1 = 1;
        while (a != 0) {
            long long q = b / a;
            b -= q * a;
            std::swap(a, b);
            x0 -= q * x1;
            std::swap(x0, x1);
        }
        inv_table[u] = ((x0 % pm) + pm) % pm;
    }

    int jmax = static_cast<int>(m) * n;
    int nthreads = std::max(1, threads);
    std::vector<std::vector<std::vector<long long>>> slot_tallies(
        nthreads, std::vector<std::vector<long long>>(jmax + 1, std::vector<long long>(m + 1, 0)));

    run_partitioned(total, nthreads, [&](int slot, long long lo, long long hi) {
        auto& tally = slot_tallies[slot];
        std::vector<long long> digit(cells);
        long long rest = lo;
        long long trace = 0;
        for (int c = 0; c < cells; ++c) {
            digit[c] = rest % pm;
            rest /= pm;
            trace = (trace + digit[c] * coeff[c]) % pm;
        }
        std::array<std::array<long long, 4>, 4> T{};
        std::array<long, 4> vals{};
        for (long long idx = lo; idx < hi; ++idx) {
            for (int c = 0; c < cells; ++c) {
                auto [i, j] = cell_pos[c];
                T[i][j] = digit[c];
                T[j][i] = digit[c];
            }
            smith_valuations(T, n, pl, m, pm, inv_table, vals);
            int j = 0;
            for (int k = 0; k < n; ++k) j += static_cast<int>(m - vals[k]);
            long long t = trace;
            int d = 0;
            if (t != 0) {
                d = static_cast<int>(m);
                while (t % pl == 0) {
                    t /= pl;
                    --d;
                }
            }
            ++tally[j][d];
            // odometer step; the trace moves by +coeff for every carried digit
            for (int c = 0; c < cells; ++c) {
                trace = (trace + coeff[c]) % pm;
                if (++digit[c] < pm) break;
                digit[c] = 0;
            }
        }
    });

    CharacterSums cs;
    cs.p = static_cast<long>(pl);
    cs.m = m;
    cs.n = n;
    cs.visited = total;
    cs.tallies.assign(jmax + 1, std::vector<long long>(m + 1, 0));
    for (const auto& t : slot_tallies)
        for (int j = 0; j <= jmax; ++j)
            for (long d = 0; d <= m; ++d) cs.tallies[j][d] += t[j][d];
    cs.S.resize(m + 1);
    for (long j = 0; j <= m; ++j) {
        long long n0 = cs.tallies[j][0];
        long long n1 = cs.tallies[j][1];
        check_invariant(n1 % (pl - 1) == 0,
                        "character_sums: unit-orbit tally not divisible by p-1");
        cs.S[j] = n0 - n1 / (pl - 1);
    }
    check_invariant(cs.S[0] == 1, "character_sums: S_0 must be 1");
    return cs;
}

GammaFactor gamma_factor(int n, int xi, const Int& q) {
    GammaFactor g;
    g.numer = {1, -1}; // 1 - X
    int half = n / 2;
    for (int i = 1; i <= half; ++i) {
        Int q2i = int_pow(q, 2 * i);
        std::vector<Int> next(g.numer.size() + 2, 0);
        for (size_t k = 0; k < g.numer.size(); ++k) {
            next[k] += g.numer[k];
            next[k + 2] -= q2i * g.numer[k];
        }
        g.numer = next;
    }
    if (n % 2 == 0 && xi != 0) {
        g.denom = {1, -xi * int_pow(q, n / 2)};
    } else {
        g.denom = {1};
    }
    return g;
}

SiegelPoly recover_F(const CharacterSums& sums, const GammaFactor& gamma, long eB) {
    require(sums.m >= eB + 1, "recover_F: level must be at least e_B + 1");
    auto lhs = [&](long r) {
        Int acc = 0;
        for (size_t k = 0; k < gamma.denom.size(); ++k) {
            long idx = r - static_cast<long>(k);
            if (idx < 0 || idx > sums.m) continue;
            acc += gamma.denom[k] * Int(sums.S[idx]);
        }
        return acc;
    };
    SiegelPoly out;
    out.p = sums.p;
    out.n = sums.n;
    out.eB = eB;
    out.F.assign(eB + 1, 0);
    for (long r = 0; r <= eB; ++r) {
        Int acc = lhs(r);
        for (size_t a = 1; a < gamma.numer.size(); ++a) {
            long idx = r - static_cast<long>(a);
            if (idx < 0) break;
            acc -= gamma.numer[a] * out.F[idx];
        }
        out.F[r] = acc; // numer[0] = 1
    }
    // consistency row at degree eB + 1
    Int acc = lhs(eB + 1);
    for (size_t a = 1; a < gamma.numer.size(); ++a) {
        long idx = eB + 1 - static_cast<long>(a);
        if (idx < 0) break;
        acc -= gamma.numer[a] * out.F[idx];
    }
    check_invariant(acc == 0, "recover_F: consistency row has nonzero residual");
    check_invariant(out.F[0] == 1, "recover_F: constant term must be 1");
    check_invariant(out.F[eB] != 0, "recover_F: degree fell short of e_B");
    return out;
}

SiegelPoly siegel_oracle(const HalfIntegralMatrix& B, const Int& p, long level,
                         long long budget, int threads) {
    LocalInvariants inv = local_invariants(B, p);
    long m = level > 0 ? level : inv.eB + 1;
    require(m >= inv.eB + 1, "siegel_oracle: level below e_B + 1");
    CharacterSums cs = character_sums(B, p, m, budget, threads);
    GammaFactor g = gamma_factor(B.n, inv.xi, p);
    return recover_F(cs, g, inv.eB);
}

std::optional<std::vector<Int>> f_coeffs_from_egk(const GPoly& g, long q, int n) {
    std::vector<Int> out(g.eN + 1);
    for (long i = 0; i <= g.eN; ++i) {
        QuadExt v = coeff_at_sqrtq(g.coeffs[i], q) * half_power(q, (n + 1) * i);
        if (!v.is_rational()) return std::nullopt;
        Rational r = v.rational_part();
        if (denominator(r) != 1) return std::nullopt;
        out[i] = numerator(r);
    }
    return out;
}

bool f_tilde_compare(const GPoly& egk_g, long q, int n, const SiegelPoly& oracle) {
    if (egk_g.eN != oracle.eB) return false;
    auto coeffs = f_coeffs_from_egk(egk_g, q, n);
    if (!coeffs) return false;
    return *coeffs == oracle.F;
}

} // namespace gksiegel
