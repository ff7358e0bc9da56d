#include "gksiegel/gross_keating.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <unordered_set>

#include "gksiegel/parallel.hpp"

namespace gksiegel {

bool s_membership(const HalfIntegralMatrix& B, const Int& p, const std::vector<long>& a) {
    int n = B.n;
    check_invariant(static_cast<int>(a.size()) == n, "s_membership: profile length mismatch");
    for (int i = 1; i < n; ++i)
        check_invariant(a[i] >= a[i - 1] && a[i - 1] >= 0, "s_membership: profile not nondecreasing");
    for (int i = 0; i < n; ++i) {
        // ord(b_ii) = ord(twoB_ii) - 1 at p = 2, = ord(twoB_ii) otherwise
        if (B.at(i, i) != 0) {
            long v = ord_p(B.at(i, i), p);
            if (p == 2) v -= 1;
            if (v < a[i]) return false;
        }
        for (int j = 0; j < n; ++j) {
            if (i == j || B.at(i, j) == 0) continue;
            if (2 * ord_p(B.at(i, j), p) < a[i] + a[j]) return false;
        }
    }
    return true;
}

JordanForm jordan_odd(const HalfIntegralMatrix& B, const Int& p, long precision) {
    require(p != 2 && is_probable_prime(p), "jordan_odd: p must be an odd prime");
    Int d2 = det_twoB(B);
    require(d2 != 0, "jordan_odd: degenerate matrix");
    require(precision > ord_p(d2, p) + 2, "jordan_odd: precision too small");
    int n = B.n;
    Int PN = int_pow(p, precision);
    std::vector<Int> M = B.twoB;
    auto at = [&](int i, int j) -> Int& { return M[static_cast<size_t>(i) * n + j]; };
    for (auto& x : M) {
        x %= PN;
        if (x < 0) x += PN;
    }
    auto vord = [&](const Int& x) { return x == 0 ? precision : ord_p(x, p); };
    JordanForm jf;
    jf.p = p;
    Int inv2 = (p + 1) / 2;
    for (int k = 0; k < n; ++k) {
        int bi = -1, bj = -1;
        long bestv = precision;
        for (int i = k; i < n; ++i)
            if (vord(at(i, i)) < bestv) {
                bestv = vord(at(i, i));
                bi = bj = i;
            }
        for (int i = k; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (vord(at(i, j)) < bestv) {
                    bestv = vord(at(i, j));
                    bi = i;
                    bj = j;
                }
        require(bi >= 0, "jordan_odd: working precision exhausted (ambiguous pivot valuation)");
        if (bi != bj) {
            // fold the off-diagonal minimum onto the diagonal; one of the two
            // signs keeps the valuation since p is odd
            int i = bi, j = bj;
            bool folded = false;
            for (int s : {1, -1}) {
                Int cand = ((at(i, i) + 2 * s * at(i, j) + at(j, j)) % PN + PN) % PN;
                if (vord(cand) == bestv) {
                    for (int l = 0; l < n; ++l)
                        at(i, l) = ((at(i, l) + s * at(j, l)) % PN + PN) % PN;
                    for (int l = 0; l < n; ++l)
                        at(l, i) = ((at(l, i) + s * at(l, j)) % PN + PN) % PN;
                    folded = true;
                    break;
                }
            }
            check_invariant(folded && vord(at(i, i)) == bestv,
                            "jordan_odd: diagonal fold lost the pivot");
        }
        if (bi != k) {
            for (int l = 0; l < n; ++l) std::swap(at(bi, l), at(k, l));
            for (int l = 0; l < n; ++l) std::swap(at(l, bi), at(l, k));
        }
        long v = vord(at(k, k));
        Int pv = int_pow(p, v);
        Int Prem = int_pow(p, precision - v);
        Int unit = at(k, k) / pv % Prem;
        // modular inverse by extended Euclid
        Int a = unit, b = Prem, x0 = 0, x1 = 1;
        while (a != 0) {
            Int q = b / a;
            b -= q * a;
            std::swap(a, b);
            x0 -= q * x1;
            std::swap(x0, x1);
        }
        Int uinv = ((x0 % Prem) + Prem) % Prem;
        check_invariant(unit * uinv % Prem == 1, "jordan_odd: unit inversion failed");
        JordanBlock blk;
        blk.exponent = v;
        blk.unit_mod_p = static_cast<long>(unit * inv2 % p); // unit of B = twoB/2
        jf.blocks.push_back(blk);
        for (int r = k + 1; r < n; ++r) {
            if (at(r, k) == 0) continue;
            Int c = at(r, k) / pv % Prem * uinv % Prem;
            for (int l = 0; l < n; ++l) at(r, l) = ((at(r, l) - c * at(k, l)) % PN + PN) % PN;
            for (int l = 0; l < n; ++l) at(l, r) = ((at(l, r) - c * at(l, k)) % PN + PN) % PN;
        }
    }
    std::stable_sort(jf.blocks.begin(), jf.blocks.end(),
                     [](const JordanBlock& x, const JordanBlock& y) { return x.exponent < y.exponent; });
    long total = 0;
    for (const auto& b : jf.blocks) total += b.exponent;
    check_invariant(total == ord_p(d2, p), "jordan_odd: exponent sum disagrees with det valuation");
    return jf;
}

long gr_at_p(const HalfIntegralMatrix& B, const Int& p, int r) {
    require(r >= 1 && r <= B.n, "gr_at_p: r out of range");
    auto seqs = index_sequences(B.n, r);
    long best = -1;
    for (const auto& I : seqs) {
        for (const auto& J : seqs) {
            Int m = minor_norm(B, I, J);
            if (m == 0) continue;
            long v = ord_p(m, p);
            if (best < 0 || v < best) best = v;
        }
    }
    check_invariant(best >= 0, "gr_at_p: all minors vanished");
    return best;
}

namespace {

long long ll_pow(long long b, long e) {
    long long r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

// det mod m for r <= 4, cofactor expansion with eager reduction
long long det_mod(const std::array<std::array<long long, 4>, 4>& M, int r, long long m) {
    if (r == 1) return M[0][0] % m;
    if (r == 2) return ((M[0][0] * M[1][1] - M[0][1] * M[1][0]) % m + m) % m;
    long long acc = 0;
    for (int c = 0; c < r; ++c) {
        std::array<std::array<long long, 4>, 4> sub{};
        for (int i = 1; i < r; ++i) {
            int cc = 0;
            for (int j = 0; j < r; ++j) {
                if (j == c) continue;
                sub[i - 1][cc++] = M[i][j];
            }
        }
        long long term = M[0][c] % m * det_mod(sub, r - 1, m) % m;
        acc = (c % 2 == 0) ? (acc + term) % m : (acc - term % m + m) % m;
    }
    return (acc % m + m) % m;
}

} // namespace

long dr_enumerate(const HalfIntegralMatrix& B, const Int& p, int r, long cutoff,
                  long long budget, int threads) {
    require(r >= 1 && r <= B.n, "dr_enumerate: r out of range");
    require(cutoff >= 1, "dr_enumerate: cutoff must be positive");
    int n = B.n;
    require(n <= 4, "dr_enumerate: supported up to n = 4");
    bool dyadic = (p == 2);
    long K = cutoff + 1 + (dyadic ? r : 0);
    long long pl = static_cast<long long>(p);
    long long pK = ll_pow(pl, K);
    long long pc = ll_pow(pl, cutoff);
    std::vector<long long> twoBred(B.twoB.size());
    for (size_t i = 0; i < B.twoB.size(); ++i) {
        Int v = B.twoB[i] % pK;
        if (v < 0) v += pK;
        twoBred[i] = static_cast<long long>(v);
    }
    auto subsets = index_sequences(n, r);
    int freecount = (n - r) * r;
    long long per_subset = 1;
    for (int i = 0; i < freecount; ++i) {
        per_subset *= pc;
        if (per_subset > budget) throw budget_error("dr_enumerate: enumeration exceeds budget");
    }
    long long total = per_subset * static_cast<long long>(subsets.size());
    if (total > budget) throw budget_error("dr_enumerate: enumeration exceeds budget");

    // Any X with det B[X] != 0 factors as X'H with X' carrying a unit r x r
    // minor and H square, and the H factor only raises the valuation; it is
    // enough to scan X that restrict to the identity on some row set S.
    int nthreads = std::max(1, threads);
    std::vector<long> slot_min(nthreads, cutoff);
    run_partitioned(total, nthreads, [&](int slot, long long lo, long long hi) {
        std::array<std::array<long long, 4>, 4> X{};
        std::array<std::array<long long, 4>, 4> M{};
        std::array<std::array<long long, 4>, 4> T{};
        long local = cutoff;
        for (long long idx = lo; idx < hi; ++idx) {
            long long si = idx / per_subset;
            long long rest = idx % per_subset;
            const auto& S = subsets[si];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < r; ++j) X[i][j] = 0;
            for (int j = 0; j < r; ++j) X[S[j]][j] = 1;
            for (int i = 0; i < n; ++i) {
                if (std::find(S.begin(), S.end(), i) != S.end()) continue;
                for (int j = 0; j < r; ++j) {
                    X[i][j] = rest % pc;
                    rest /= pc;
                }
            }
            // M = X^t (2B) X mod p^K
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < r; ++j) {
                    long long acc = 0;
                    for (int l = 0; l < n; ++l)
                        acc = (acc + twoBred[static_cast<size_t>(i) * n + l] * X[l][j]) % pK;
                    T[i][j] = acc;
                }
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    long long acc = 0;
                    for (int l = 0; l < n; ++l) acc = (acc + X[l][i] * T[l][j]) % pK;
                    M[i][j] = acc;
                }
            long long d = det_mod(M, r, pK);
            if (d == 0) continue; // ord >= cutoff + 1; the clamp covers it
            long v = 0;
            while (d % pl == 0) {
                d /= pl;
                ++v;
            }
            if (dyadic) v += 2 * (r / 2) - r; // det M = 2^r det B[X]
            local = std::min(local, v);
        }
        slot_min[slot] = local;
    });
    long best = cutoff;
    for (long v : slot_min) best = std::min(best, v);
    return best;
}

const char* certificate_name(GKCertificate c) {
    switch (c) {
        case GKCertificate::exact: return "exact";
        case GKCertificate::search_certified: return "search-certified";
        default: return "search-unverified";
    }
}

namespace {

struct Key128 {
    uint64_t a = 0, b = 0;
    bool operator==(const Key128& o) const { return a == o.a && b == o.b; }
};

struct Key128Hash {
    size_t operator()(const Key128& k) const {
        uint64_t h = (k.a ^ (k.b * 0x9e3779b97f4a7c15ULL));
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
        return static_cast<size_t>(h);
    }
};

// Dyadic search workspace: states are 2B[U] mod 2^N packed into 128 bits.
struct DyadicSearch {
    int n = 0;
    long N = 0;
    long long mask = 0;
    std::vector<long> ubound;

    using State = std::array<long long, 16>; // row-major n x n, entries mod 2^N

    long ord_cap(long long x) const {
        if (x == 0) return N;
        long v = 0;
        while ((x & 1) == 0) {
            x >>= 1;
            ++v;
        }
        return v;
    }

    // Lexicographically greatest member of S(C) for this fixed matrix: the
    // all-equal tail is the least demanding completion, so the greedy
    // per-coordinate cap is exact.
    std::vector<long> maxlex(const State& st) const {
        std::vector<long> a(n, 0);
        auto at = [&](int i, int j) { return st[static_cast<size_t>(i) * n + j]; };
        for (int i = 0; i < n; ++i) {
            long c = 4 * N;
            for (int j = i; j < n; ++j) c = std::min(c, ord_cap(at(j, j)) - 1);
            for (int j = i; j < n; ++j)
                for (int k = j + 1; k < n; ++k) c = std::min(c, ord_cap(at(j, k)));
            for (int j = 0; j < i; ++j)
                for (int l = i; l < n; ++l) c = std::min(c, 2 * ord_cap(at(j, l)) - a[j]);
            a[i] = c;
        }
        return a;
    }

    Key128 pack(const State& st) const {
        Key128 k;
        int bits = 0;
        bool low = true;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                uint64_t v = static_cast<uint64_t>(st[static_cast<size_t>(i) * n + j]);
                if (low) {
                    k.a |= v << bits;
                    if (bits + N > 64) {
                        k.b |= v >> (64 - bits);
                        low = false;
                        bits = bits + static_cast<int>(N) - 64;
                    } else {
                        bits += static_cast<int>(N);
                        if (bits == 64) {
                            low = false;
                            bits = 0;
                        }
                    }
                } else {
                    check_invariant(bits + N <= 64, "dyadic search: state exceeds 128-bit packing");
                    k.b |= v << bits;
                    bits += static_cast<int>(N);
                }
            }
        return k;
    }

    State unpack(const Key128& k) const {
        State st{};
        int bits = 0;
        bool low = true;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                uint64_t v;
                if (low) {
                    v = (k.a >> bits) & static_cast<uint64_t>(mask);
                    if (bits + N > 64) {
                        v |= (k.b << (64 - bits)) & static_cast<uint64_t>(mask);
                        low = false;
                        bits = bits + static_cast<int>(N) - 64;
                    } else {
                        bits += static_cast<int>(N);
                        if (bits == 64) {
                            low = false;
                            bits = 0;
                        }
                    }
                } else {
                    v = (k.b >> bits) & static_cast<uint64_t>(mask);
                    bits += static_cast<int>(N);
                }
                st[static_cast<size_t>(i) * n + j] = static_cast<long long>(v);
                st[static_cast<size_t>(j) * n + i] = static_cast<long long>(v);
            }
        return st;
    }

    State swap_move(State s, int i, int j) const {
        for (int l = 0; l < n; ++l) std::swap(s[static_cast<size_t>(i) * n + l], s[static_cast<size_t>(j) * n + l]);
        for (int l = 0; l < n; ++l) std::swap(s[static_cast<size_t>(l) * n + i], s[static_cast<size_t>(l) * n + j]);
        return s;
    }

    // basis change v_i <- v_i + c v_j, congruence on 2B
    State shear_move(State s, int i, int j, long long c) const {
        for (int l = 0; l < n; ++l)
            s[static_cast<size_t>(i) * n + l] =
                (s[static_cast<size_t>(i) * n + l] + c * s[static_cast<size_t>(j) * n + l]) & mask;
        for (int l = 0; l < n; ++l)
            s[static_cast<size_t>(l) * n + i] =
                (s[static_cast<size_t>(l) * n + i] + c * s[static_cast<size_t>(l) * n + j]) & mask;
        return s;
    }

    State unit_move(State s, int i, long long u) const {
        for (int l = 0; l < n; ++l)
            s[static_cast<size_t>(i) * n + l] = (s[static_cast<size_t>(i) * n + l] * u) & mask;
        for (int l = 0; l < n; ++l)
            s[static_cast<size_t>(l) * n + i] = (s[static_cast<size_t>(l) * n + i] * u) & mask;
        return s;
    }

    template <class F>
    void for_each_child(const State& st, F&& emit) const {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) emit(swap_move(st, i, j));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                emit(shear_move(st, i, j, 1));
                emit(shear_move(st, i, j, mask)); // c = -1 mod 2^N
            }
        for (int i = 0; i < n; ++i) {
            emit(unit_move(st, i, 3));
            emit(unit_move(st, i, mask)); // u = -1
        }
    }
};

// Transform-invariant cap profile assembled from a_1 = g_1, the ledger bounds
// e_r <= g_r, the ledger end pin e_n = e_B, and the parity carried by xi_B.
// A search result meeting the profile coordinatewise is the GK invariant.
std::vector<long> dyadic_cap_profile(const HalfIntegralMatrix& B, const LocalInvariants& inv) {
    int n = B.n;
    std::vector<long> g(n + 1, 0);
    for (int r = 1; r <= n; ++r) g[r] = gr_at_p(B, 2, r);
    std::vector<long> u(n, 0);
    long partial = 0;
    for (int i = 1; i <= n; ++i) {
        long v;
        if (i == n) {
            long total = (n % 2 == 1) ? inv.eB : (inv.xi != 0 ? inv.eB : inv.eB + 1);
            v = total - partial;
        } else if (i % 2 == 1) {
            v = g[i] - partial;
        } else {
            v = g[i] + 1 - partial;
            if ((partial + v) % 2 == 0) v -= 1; // even ledger index rounds down
        }
        if (v < 0) return {};
        if (i > 1 && v < u[i - 2]) return {};
        u[i - 1] = v;
        partial += v;
    }
    return u;
}

GKInvariant dyadic_search(const HalfIntegralMatrix& B, const LocalInvariants& inv,
                          const GKOptions& opts) {
    DyadicSearch ctx;
    ctx.n = B.n;
    ctx.N = inv.eB + 3;
    if (static_cast<long>(B.n * (B.n + 1) / 2) * ctx.N > 128)
        throw budget_error("gk_invariant: dyadic state exceeds 128-bit packing");
    ctx.mask = (1LL << ctx.N) - 1;
    ctx.ubound = dyadic_cap_profile(B, inv);

    DyadicSearch::State start{};
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j) {
            Int v = B.twoB[static_cast<size_t>(i) * B.n + j] % Int(ctx.mask + 1);
            if (v < 0) v += ctx.mask + 1;
            start[static_cast<size_t>(i) * B.n + j] = static_cast<long long>(v);
        }
    std::vector<long> best = ctx.maxlex(start);
    std::unordered_set<Key128, Key128Hash> visited;
    visited.insert(ctx.pack(start));
    std::vector<Key128> frontier{ctx.pack(start)};
    long long explored = 1;
    bool closed = false;
    bool hit_cap = !ctx.ubound.empty() && best == ctx.ubound;
    int nthreads = std::max(1, opts.threads);
    bool over_budget = false;
    while (!frontier.empty() && !hit_cap && !over_budget) {
        std::vector<std::vector<Key128>> produced(nthreads);
        run_partitioned(static_cast<long long>(frontier.size()), nthreads,
                        [&](int slot, long long lo, long long hi) {
                            auto& out = produced[slot];
                            for (long long i = lo; i < hi; ++i) {
                                DyadicSearch::State st = ctx.unpack(frontier[i]);
                                ctx.for_each_child(
                                    st, [&](const DyadicSearch::State& c) { out.push_back(ctx.pack(c)); });
                            }
                        });
        std::vector<Key128> next;
        for (const auto& bucket : produced) {
            for (const Key128& k : bucket) {
                if (!visited.insert(k).second) continue;
                std::vector<long> m = ctx.maxlex(ctx.unpack(k));
                if (m > best) best = m;
                next.push_back(k);
                ++explored;
            }
        }
        hit_cap = !ctx.ubound.empty() && best == ctx.ubound;
        over_budget = explored > opts.search_budget;
        frontier = std::move(next);
        if (frontier.empty() && !hit_cap) closed = true;
    }
    GKInvariant res;
    res.a = best;
    res.ledger = ei_ledger(best);
    res.states_explored = explored;
    if (hit_cap) res.certificate = GKCertificate::search_certified;
    else if (closed) res.certificate = GKCertificate::exact;
    else res.certificate = GKCertificate::search_unverified;
    return res;
}

} // namespace

GKInvariant gk_invariant(const HalfIntegralMatrix& B, const Int& p, const GKOptions& opts) {
    require(is_probable_prime(p), "gk_invariant: p is not prime");
    require(det_twoB(B) != 0, "gk_invariant: degenerate matrix");
    LocalInvariants inv = local_invariants(B, p);
    GKInvariant res;
    if (p != 2) {
        long N = ord_p(det_twoB(B), p) + 3;
        JordanForm jf = jordan_odd(B, p, N);
        for (const auto& b : jf.blocks) res.a.push_back(b.exponent);
        res.certificate = GKCertificate::exact;
    } else if (B.n == 1) {
        res.a = {ord_p(B.at(0, 0), Int(2)) - 1};
        res.certificate = GKCertificate::exact;
    } else if (B.n == 2) {
        long inf = LONG_MAX / 4;
        auto vord = [&](const Int& x) { return x == 0 ? inf : ord_p(x, Int(2)); };
        long a1 = std::min({vord(B.at(0, 0)) - 1, vord(B.at(1, 1)) - 1, vord(B.at(0, 1))});
        long a2 = inv.eB - a1 + (inv.xi != 0 ? 0 : 1);
        check_invariant(a2 >= a1, "gk_invariant: binary closed form out of order");
        res.a = {a1, a2};
        res.certificate = GKCertificate::exact;
    } else {
        res = dyadic_search(B, inv, opts);
    }
    res.ledger = ei_ledger(res.a);
    if (res.certificate == GKCertificate::exact) {
        check_invariant(res.ledger.back() == inv.eB,
                        "gk_invariant: ledger end disagrees with the discriminant valuation");
    }
    return res;
}

} // namespace gksiegel
