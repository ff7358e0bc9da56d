#include "gksiegel/attach.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace gksiegel {

std::vector<NaiveEGKDatum> enumerate_candidates(const std::vector<long>& a) {
    int n = static_cast<int>(a.size());
    check_invariant(n >= 1, "enumerate_candidates: empty sequence");
    std::vector<NaiveEGKDatum> out;
    std::vector<int> eps(n, 0);
    // walk positions 1..n (1-based), branching only on genuinely free signs
    auto rec = [&](auto&& self, int idx, long partial) -> void {
        if (idx > n) {
            NaiveEGKDatum H;
            H.a = a;
            H.eps = eps;
            out.push_back(H);
            return;
        }
        long here = partial + a[idx - 1];
        if (idx == 1) {
            eps[0] = 1;
            self(self, 2, here);
            return;
        }
        if (idx % 2 == 0) {
            if (here % 2 == 0) {
                for (int s : {1, -1}) {
                    eps[idx - 1] = s;
                    self(self, idx + 1, here);
                }
            } else {
                eps[idx - 1] = 0;
                self(self, idx + 1, here);
            }
            return;
        }
        // odd idx >= 3
        if (partial % 2 == 0) {
            int pw = (a[idx - 1] + a[idx - 2]) % 2 == 0 ? 1 : eps[idx - 2];
            eps[idx - 1] = pw * eps[idx - 3];
            self(self, idx + 1, here);
        } else {
            for (int s : {1, -1}) {
                eps[idx - 1] = s;
                self(self, idx + 1, here);
            }
        }
    };
    rec(rec, 1, 0);
    for (auto& H : out) H = validate_negk(H.a, H.eps);
    return out;
}

std::vector<int> fast_eps_even_odd_p(const std::vector<long>& a, const JordanForm& jf,
                                     const Int& p) {
    require(p != 2, "fast_eps_even_odd_p: p must be odd");
    int n = static_cast<int>(a.size());
    check_invariant(static_cast<int>(jf.blocks.size()) == n, "fast_eps: block count mismatch");
    std::vector<int> pins(n, 2);
    long partial = 0;
    Int unit_prod = 1;
    for (int i = 1; i <= n; ++i) {
        partial += a[i - 1];
        unit_prod = unit_prod * jf.blocks[i - 1].unit_mod_p % p;
        if (i % 2 != 0) continue;
        if (partial % 2 != 0) {
            pins[i - 1] = 0; // ramified block discriminant, matches (N2)
            continue;
        }
        // xi of the leading block: D = (-4)^{i/2} prod p^{a_j} u_j, valuation even
        Int w = int_pow(Int(-4) % p + p, i / 2) % p * unit_prod % p;
        pins[i - 1] = legendre(w, p);
    }
    return pins;
}

namespace {

std::mutex cache_mutex;
std::map<std::string, AttachmentResult> cache;

std::string cache_key(const HalfIntegralMatrix& B, const Int& p, long eB) {
    Int mod = int_pow(p, eB + 3);
    std::ostringstream os;
    os << p.str() << ":" << B.n << ":";
    for (const auto& v : B.twoB) {
        Int r = v % mod;
        if (r < 0) r += mod;
        os << r.str() << ",";
    }
    return os.str();
}

} // namespace

void clear_attach_cache() {
    std::lock_guard<std::mutex> lk(cache_mutex);
    cache.clear();
}

AttachmentResult attach(const HalfIntegralMatrix& B, const Int& p, const AttachOptions& opts) {
    LocalInvariants inv = local_invariants(B, p);
    std::string key;
    if (opts.use_cache) {
        key = cache_key(B, p, inv.eB);
        std::lock_guard<std::mutex> lk(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end() && (!opts.force_oracle || it->second.oracle.has_value()))
            return it->second;
    }
    GKOptions gkopts;
    gkopts.threads = opts.threads;
    gkopts.search_budget = opts.search_budget;
    GKInvariant gk = gk_invariant(B, p, gkopts);
    require(gk.certificate != GKCertificate::search_unverified,
            "attach: GK certificate is search-unverified; raise the search budget");
    auto candidates = enumerate_candidates(gk.a);
    check_invariant(!candidates.empty(), "attach: no naive EGK candidates at all");

    AttachmentResult res;
    res.gk = gk;
    std::string method;
    if (candidates.size() > 1 && p != 2) {
        long N = ord_p(det_twoB(B), p) + 3;
        JordanForm jf = jordan_odd(B, p, N);
        auto pins = fast_eps_even_odd_p(gk.a, jf, p);
        std::vector<NaiveEGKDatum> filtered;
        for (const auto& H : candidates) {
            bool ok = true;
            for (size_t i = 0; i < pins.size(); ++i)
                if (pins[i] != 2 && H.eps[i] != pins[i]) ok = false;
            if (ok) filtered.push_back(H);
        }
        check_invariant(!filtered.empty(), "attach: fast path eliminated every candidate");
        candidates = filtered;
        method = "fast-path";
    }
    if (candidates.size() == 1) {
        res.datum = candidates[0];
        res.method = method.empty() ? "forced" : method;
        if (opts.force_oracle) {
            res.oracle = siegel_oracle(B, p, 0, opts.budget, opts.threads);
            check_invariant(f_tilde_compare(f_poly(res.datum), static_cast<long>(p), B.n, *res.oracle),
                            "attach: forced datum disagrees with the oracle");
        }
    } else {
        SiegelPoly oracle = siegel_oracle(B, p, 0, opts.budget, opts.threads);
        const NaiveEGKDatum* hit = nullptr;
        for (const auto& H : candidates) {
            if (f_tilde_compare(f_poly(H), static_cast<long>(p), B.n, oracle)) {
                hit = &H;
                break; // candidates are in lex order; ties induce the same F
            }
        }
        check_invariant(hit != nullptr, "attach: no candidate matched the oracle polynomial");
        res.datum = *hit;
        res.method = "oracle-matched";
        res.oracle = oracle;
    }
    if (opts.use_cache) {
        std::lock_guard<std::mutex> lk(cache_mutex);
        cache[key] = res; // identical values on identical keys
    }
    return res;
}

} // namespace gksiegel
