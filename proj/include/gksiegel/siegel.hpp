#pragma once

#include <optional>
#include <vector>

#include "gksiegel/egk.hpp"
#include "gksiegel/matrix.hpp"

namespace gksiegel {

// Tallies of the defining sum at level m: every symmetric T mod p^m stands
// for R = p^{-m} T; terms are grouped by mu-exponent j and by the order class
// d of the character value. Galois invariance collapses each row to an
// integer S_j = N_{j,0} - N_{j,1}/(p-1).
struct CharacterSums {
    long p = 0;
    long m = 0;
    int n = 0;
    long long visited = 0;
    std::vector<std::vector<long long>> tallies; // [j][d], j <= n*m, d <= m
    std::vector<long long> S;                    // rows 0..m are complete
};

CharacterSums character_sums(const HalfIntegralMatrix& B, const Int& p, long m,
                             long long budget = 200000000, int threads = 1);

struct GammaFactor {
    std::vector<Int> numer; // (1-X) prod (1 - q^{2i} X^2)
    std::vector<Int> denom; // (1 - q^{n/2} xi X) for even n, else (1)
};
GammaFactor gamma_factor(int n, int xi, const Int& q);

struct SiegelPoly {
    std::vector<Int> F; // F(0) = 1, degree e_B
    Int p;
    int n = 0;
    long eB = 0;
};

// Triangular solve of series(S) * denom = numer * F through degree eB, with
// the next row checked as a consistency witness.
SiegelPoly recover_F(const CharacterSums& sums, const GammaFactor& gamma, long eB);

// Convenience pipeline at the default level m = e_B + 1.
SiegelPoly siegel_oracle(const HalfIntegralMatrix& B, const Int& p, long level = 0,
                         long long budget = 200000000, int threads = 1);

// Integer coefficients of F recovered from the EGK-side polynomial:
// f_i = a_i(sqrt q) q^{(n+1)i/2}. Returns nullopt when some coefficient is
// not a rational integer (candidate daturm mismatch).
std::optional<std::vector<Int>> f_coeffs_from_egk(const GPoly& g, long q, int n);

bool f_tilde_compare(const GPoly& egk_g, long q, int n, const SiegelPoly& oracle);

} // namespace gksiegel
