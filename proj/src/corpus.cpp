#include "gksiegel/corpus.hpp"

namespace gksiegel {

namespace {

void apply_shear(HalfIntegralMatrix& B, int i, int j, long c) {
    int n = B.n;
    for (int l = 0; l < n; ++l) B.at(i, l) += c * B.at(j, l);
    for (int l = 0; l < n; ++l) B.at(l, i) += c * B.at(l, j);
}

void apply_swap(HalfIntegralMatrix& B, int i, int j) {
    int n = B.n;
    for (int l = 0; l < n; ++l) std::swap(B.at(i, l), B.at(j, l));
    for (int l = 0; l < n; ++l) std::swap(B.at(l, i), B.at(l, j));
}

bool within_bound(const HalfIntegralMatrix& B, long bound) {
    for (const auto& v : B.twoB)
        if (v > bound || v < -bound) return false;
    return true;
}

} // namespace

HalfIntegralMatrix gen_matrix(DetRng& rng, int n, long entry_bound) {
    HalfIntegralMatrix B;
    B.n = n;
    B.twoB.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) B.at(i, i) = 2 * rng.range(1, 5);
    // square-scaled entries feed conductors f_B > 1
    if (rng.range(0, 2) == 0) {
        int i = static_cast<int>(rng.range(0, n - 1));
        B.at(i, i) *= (rng.range(0, 1) == 0 ? 4 : 9);
    }
    // occasionally a genuinely half-integral block
    if (n >= 2 && rng.range(0, 2) == 0) {
        int i = static_cast<int>(rng.range(0, n - 2));
        long a = rng.range(1, 3), c = rng.range(1, 3);
        B.at(i, i) = 2 * a;
        B.at(i + 1, i + 1) = 2 * c;
        B.at(i, i + 1) = B.at(i + 1, i) = 1; // 4ac > 1 always
    }
    int moves = static_cast<int>(rng.range(3, 7));
    for (int t = 0; t < moves; ++t) {
        HalfIntegralMatrix trial = B;
        if (n >= 2 && rng.range(0, 4) == 0) {
            int i = static_cast<int>(rng.range(0, n - 1));
            int j = static_cast<int>(rng.range(0, n - 2));
            if (j >= i) ++j;
            apply_swap(trial, i, j);
        } else if (n >= 2) {
            int i = static_cast<int>(rng.range(0, n - 1));
            int j = static_cast<int>(rng.range(0, n - 2));
            if (j >= i) ++j;
            long c = rng.range(0, 1) == 0 ? 1 : -1;
            apply_shear(trial, i, j, c);
        }
        if (within_bound(trial, entry_bound)) B = trial;
    }
    check_invariant(is_positive_definite(B), "gen_matrix: lost positive definiteness");
    return B;
}

std::vector<HalfIntegralMatrix> gen_corpus(uint64_t seed, int count, int n, long entry_bound) {
    require(count >= 1, "gen_corpus: count must be positive");
    require(n >= 1 && n <= 4, "gen_corpus: n must be in 1..4");
    DetRng rng(seed);
    std::vector<HalfIntegralMatrix> out;
    while (static_cast<int>(out.size()) < count) {
        HalfIntegralMatrix B = gen_matrix(rng, n, entry_bound);
        validate_matrix(B);
        out.push_back(B);
    }
    return out;
}

} // namespace gksiegel
