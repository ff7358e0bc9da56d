#pragma once

#include <string>
#include <vector>

#include "gksiegel/numeric.hpp"

namespace gksiegel {

// Symmetric matrix B with integral diagonal and half-integral off-diagonal
// entries, stored exactly through 2B (integral, even diagonal).
struct HalfIntegralMatrix {
    int n = 0;
    std::vector<Int> twoB; // row-major, n x n

    Int& at(int i, int j) { return twoB[static_cast<size_t>(i) * n + j]; }
    const Int& at(int i, int j) const { return twoB[static_cast<size_t>(i) * n + j]; }
};

// Parses {"n": ..., "two_b": [[...]]} and validates: symmetry, even diagonal,
// nonzero determinant.
HalfIntegralMatrix parse_matrix_json(const std::string& text);
std::string matrix_to_json(const HalfIntegralMatrix& B);
void validate_matrix(const HalfIntegralMatrix& B);

Int det_int(std::vector<Int> a, int n); // fraction-free Bareiss
Int det_twoB(const HalfIntegralMatrix& B);
bool is_positive_definite(const HalfIntegralMatrix& B);

// D_B = (-4)^[n/2] det(B); always an integer.
Int disc_DB(const HalfIntegralMatrix& B);

struct LocalInvariants {
    Int p;
    int xi = 0;   // splitting type of Q_p(sqrt(D_B))
    long eB = 0;
    long ordDB = 0;
};
LocalInvariants local_invariants(const HalfIntegralMatrix& B, const Int& p);

struct GlobalDiscriminantData {
    Int dB; // fundamental discriminant, sign included
    Int fB; // conductor, positive
};
// Requires n even and B positive definite; dB * fB^2 = (-1)^{n/2} det(2B).
GlobalDiscriminantData global_discriminant(const HalfIntegralMatrix& B,
                                           const Int& trial_bound = Int(1000000));

// All strictly increasing index sequences of length r in {0,...,n-1}.
std::vector<std::vector<int>> index_sequences(int n, int r);

// 2^{2[r/2]+1-delta} det B(i;j); always integral (asserted).
Int minor_norm(const HalfIntegralMatrix& B, const std::vector<int>& rows,
               const std::vector<int>& cols);

// GCD of all r x r minor norms; zero minors are neutral.
Int G_r(const HalfIntegralMatrix& B, int r);

} // namespace gksiegel
