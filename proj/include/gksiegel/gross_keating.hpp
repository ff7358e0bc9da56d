#pragma once

#include <optional>
#include <vector>

#include "gksiegel/egk.hpp"
#include "gksiegel/matrix.hpp"

namespace gksiegel {

// Membership of a valuation profile in S(B): ord(b_ii) >= a_i and
// 2 ord(2 b_ij) >= a_i + a_j for all i, j.
bool s_membership(const HalfIntegralMatrix& B, const Int& p, const std::vector<long>& a);

struct JordanBlock {
    long exponent = 0;
    long unit_mod_p = 1; // unit of the diagonalized B-entry, reduced mod p
};

struct JordanForm {
    Int p;
    std::vector<JordanBlock> blocks; // sorted by exponent
};

// Symmetric elimination with minimal-valuation pivots over Z/p^precision,
// odd p only. The sorted exponents are the Gross-Keating invariant.
JordanForm jordan_odd(const HalfIntegralMatrix& B, const Int& p, long precision);

// Minimum p-adic valuation over all r x r minor norms.
long gr_at_p(const HalfIntegralMatrix& B, const Int& p, int r);

// Enumeration oracle for the minor-valuation identity: minimum over X mod
// p^cutoff of ord_p(2^{2[r/2]} det B[X]), clamped at cutoff. The 2-power
// normalization matches the minor norms, so the result compares against
// gr_at_p directly.
long dr_enumerate(const HalfIntegralMatrix& B, const Int& p, int r, long cutoff,
                  long long budget = 200000000, int threads = 1);

enum class GKCertificate { exact, search_certified, search_unverified };

struct GKInvariant {
    std::vector<long> a;
    std::vector<long> ledger;
    GKCertificate certificate = GKCertificate::exact;
    long long states_explored = 0; // dyadic search only
};

struct GKOptions {
    long long search_budget = 1500000; // dyadic search states
    int threads = 1;
};

GKInvariant gk_invariant(const HalfIntegralMatrix& B, const Int& p, const GKOptions& opts = {});

const char* certificate_name(GKCertificate c);

} // namespace gksiegel
