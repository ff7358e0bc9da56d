#pragma once

#include <random>

#include "gksiegel/matrix.hpp"

namespace gksiegel {

// Deterministic RNG: mt19937_64 with rejection sampling, so streams are
// identical across platforms and standard libraries.
class DetRng {
public:
    explicit DetRng(uint64_t seed) : gen_(seed) {}

    uint64_t next(uint64_t bound) { // uniform in [0, bound)
        check_invariant(bound > 0, "DetRng: empty range");
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % bound;
    }

    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(next(static_cast<uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 gen_;
};

// Positive definite half-integral matrix: random diagonal or half-integral
// 2x2 block seed, mixed with square-scaled entries for conductor variety,
// then randomized by bounded unimodular congruence transforms.
HalfIntegralMatrix gen_matrix(DetRng& rng, int n, long entry_bound);

std::vector<HalfIntegralMatrix> gen_corpus(uint64_t seed, int count, int n, long entry_bound);

} // namespace gksiegel
