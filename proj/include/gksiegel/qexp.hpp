#pragma once

#include "gksiegel/lift.hpp"

namespace gksiegel {

// q-expansion coefficients c_f(1..count) of the normalized weight-18 cusp
// eigenform for the full modular group (the product of the weight-6
// Eisenstein series with the discriminant form).
std::vector<Int> weight18_qexp(int count);

// Fourier coefficients c(m), m <= count, of the cuspidal Hecke eigenform in
// the plus subspace of weight 19/2 on Gamma_0(4), normalized by c(3) = 1.
// Built from the theta / weight-2 Eisenstein basis by exact linear algebra
// and validated against the half-integral Hecke action at p = 2, 3.
std::map<Int, Rational> kohnen_plus_table_k10(int count);

// Full input table for k = 10, n = 2: genuine c_h and c_f values.
EigenformData genuine_form_k10(int count_h, int count_f);

} // namespace gksiegel
