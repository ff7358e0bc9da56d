#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gksiegel/gross_keating.hpp"
#include "gksiegel/siegel.hpp"

namespace gksiegel {

// All eps vectors compatible with (N2)-(N5) for the given GK sequence,
// in deterministic lexicographic order (+1 branches before -1).
std::vector<NaiveEGKDatum> enumerate_candidates(const std::vector<long>& a);

// Odd-p assignment of the free even-index signs: eps_i is the splitting type
// of the leading i x i block of the Jordan form. Returns one entry per index
// (1-based shifted to 0-based); entries at non-even or non-free positions are
// left at 2 (meaning unconstrained).
std::vector<int> fast_eps_even_odd_p(const std::vector<long>& a, const JordanForm& jf,
                                     const Int& p);

struct AttachOptions {
    long long budget = 200000000;
    int threads = 1;
    long long search_budget = 1500000;
    bool use_cache = true;
    bool force_oracle = false; // compute the oracle even when the datum is forced
};

struct AttachmentResult {
    NaiveEGKDatum datum;
    std::string method; // forced | fast-path | oracle-matched
    std::optional<SiegelPoly> oracle;
    GKInvariant gk;
};

AttachmentResult attach(const HalfIntegralMatrix& B, const Int& p, const AttachOptions& opts = {});

void clear_attach_cache();

} // namespace gksiegel
