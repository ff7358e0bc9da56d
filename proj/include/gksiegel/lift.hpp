#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gksiegel/attach.hpp"

namespace gksiegel {

// Input tables for the lift: weight k, even genus n, Fourier coefficients
// c_h(m) of the half-integral-weight form and Hecke eigenvalues c_f(p).
struct EigenformData {
    long k = 0;
    long n = 0;
    std::map<Int, Rational> cH;
    std::map<Int, Rational> cF;
};

EigenformData parse_eigenform_json(const std::string& text);
std::string eigenform_to_json(const EigenformData& d);

struct SatakeT {
    QuadExt t;          // alpha_p + alpha_p^{-1} = c_f(p) p^{-(2k-n-1)/2}
    bool ramanujan_ok;  // |t| <= 2, checked exactly
};
SatakeT satake_t(const Rational& cf_p, long k, long n, const Int& p);

struct LiftCoefficient {
    Rational value;
    Int dB, fB;
    Rational ch_used;
    std::vector<std::pair<Int, QuadExt>> per_prime; // p | f_B
};

struct LiftOptions {
    long long budget = 200000000;
    int threads = 1;
    long long search_budget = 1500000;
};

LiftCoefficient lift_coefficient(const HalfIntegralMatrix& B, const EigenformData& data,
                                 const LiftOptions& opts = {});

enum class MaassStatus { equal, mismatch, skipped };

struct MaassCheck {
    MaassStatus status = MaassStatus::skipped;
    Rational lift_value;
    Rational divisor_sum;
};

// n = 2 divisor-sum cross-check; throws validation_error when the c_h table
// lacks a required non-fundamental index.
MaassCheck maass_check(const HalfIntegralMatrix& B, const EigenformData& data,
                       const LiftOptions& opts = {});

struct BoundReportRow {
    std::string name;
    std::string exact;   // exact rational when the value is rational, else ""
    std::string decimal; // 30 significant digits
    bool assertion = false;
    bool holds = true;
};

struct BoundReport {
    LiftCoefficient coeff;
    std::vector<BoundReportRow> rows;
    std::vector<std::pair<int, Int>> script_e_lower; // r -> prod p^{e_r^{(p)}}
    MaassStatus maass = MaassStatus::skipped;
    bool assertions_hold = true;
};

// Evaluates the Hecke row, the classical improvement row, both asymptotic
// rows at the supplied epsilon, and the two explicit inequalities (which are
// hard assertions); comparisons behind the assertions are exact.
BoundReport bound_report(const HalfIntegralMatrix& B, const EigenformData& data,
                         const Rational& epsilon, const LiftOptions& opts = {});

// alpha_n from the classical exponent; alpha_2 = 2/9.
Rational boecherer_kohnen_alpha(long n);

std::string bound_report_csv_header();
std::string bound_report_csv_row(const std::string& id, const HalfIntegralMatrix& B,
                                 const BoundReport& rep);

} // namespace gksiegel
