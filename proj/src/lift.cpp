#include "gksiegel/lift.hpp"

#include <json.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/integer.hpp>
#include <sstream>

namespace gksiegel {

using nlohmann::ordered_json;
using float100 = boost::multiprecision::cpp_bin_float_100;

EigenformData parse_eigenform_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw validation_error(std::string("eigenform JSON parse error: ") + e.what());
    }
    require(j.contains("k") && j.contains("n") && j.contains("c_h") && j.contains("c_f"),
            "eigenform JSON: need fields k, n, c_h, c_f");
    EigenformData d;
    d.k = j["k"].get<long>();
    d.n = j["n"].get<long>();
    require(d.n >= 2 && d.n % 2 == 0, "eigenform JSON: n must be even and >= 2");
    require(d.k % 2 == 0 && d.k >= d.n + 2, "eigenform JSON: k must be even with k >= n + 2");
    for (auto it = j["c_h"].begin(); it != j["c_h"].end(); ++it)
        d.cH[Int(it.key())] = rat_from_string(it.value().get<std::string>());
    for (auto it = j["c_f"].begin(); it != j["c_f"].end(); ++it)
        d.cF[Int(it.key())] = rat_from_string(it.value().get<std::string>());
    return d;
}

std::string eigenform_to_json(const EigenformData& d) {
    ordered_json j;
    j["k"] = d.k;
    j["n"] = d.n;
    ordered_json ch = ordered_json::object(), cf = ordered_json::object();
    for (const auto& [m, v] : d.cH) ch[m.str()] = rat_to_string(v);
    for (const auto& [p, v] : d.cF) cf[p.str()] = rat_to_string(v);
    j["c_h"] = ch;
    j["c_f"] = cf;
    return j.dump(2);
}

SatakeT satake_t(const Rational& cf_p, long k, long n, const Int& p) {
    SatakeT s;
    s.t = QuadExt(cf_p) * half_power(static_cast<long>(p), -(2 * k - n - 1));
    s.ramanujan_ok = (QuadExt(Rational(2)) - s.t.abs()).sign() >= 0;
    return s;
}

LiftCoefficient lift_coefficient(const HalfIntegralMatrix& B, const EigenformData& data,
                                 const LiftOptions& opts) {
    require(B.n == data.n, "lift_coefficient: genus mismatch between matrix and form data");
    require(B.n % 2 == 0, "lift_coefficient: n must be even");
    require(is_positive_definite(B), "lift_coefficient: matrix not positive definite");
    GlobalDiscriminantData g = global_discriminant(B);
    LiftCoefficient out;
    out.dB = g.dB;
    out.fB = g.fB;
    Int absd = g.dB < 0 ? Int(-g.dB) : g.dB;
    auto ith = data.cH.find(absd);
    require(ith != data.cH.end(), "lift_coefficient: missing c_h(" + absd.str() + ")");
    out.ch_used = ith->second;

    // f_B^{k - (n+1)/2} = f_B^{(2k-n-2)/2} sqrt(f_B): assemble radicals explicitly
    auto factors = factorize(g.fB);
    Int root = 1, rad = 1;
    for (const auto& [q, e] : factors) {
        root *= int_pow(q, e / 2);
        if (e % 2 != 0) rad *= q;
    }
    long e2 = 2 * data.k - data.n - 2;
    check_invariant(e2 % 2 == 0, "lift_coefficient: exponent parity");
    MultiQuad total(out.ch_used * Rational(int_pow(g.fB, e2 / 2)) * Rational(root));
    total = total * MultiQuad::radical(rad, 1);

    AttachOptions aopts;
    aopts.budget = opts.budget;
    aopts.threads = opts.threads;
    aopts.search_budget = opts.search_budget;
    for (const auto& [q, e] : factors) {
        auto itf = data.cF.find(q);
        require(itf != data.cF.end(), "lift_coefficient: missing c_f(" + q.str() + ")");
        AttachmentResult att = attach(B, q, aopts);
        check_invariant(att.gk.ledger.back() == 2 * e,
                        "lift_coefficient: e_B^{(p)} disagrees with 2 ord_p(f_B)");
        SatakeT st = satake_t(itf->second, data.k, data.n, q);
        QuadExt fval = specialize_t(f_poly(att.datum), static_cast<long>(q), st.t);
        out.per_prime.emplace_back(q, fval);
        total = total * MultiQuad::from_quadext(fval);
    }
    check_invariant(total.is_rational(),
                    "lift_coefficient: radical support nonempty after assembly");
    out.value = total.rational_value();
    return out;
}

MaassCheck maass_check(const HalfIntegralMatrix& B, const EigenformData& data,
                       const LiftOptions& opts) {
    require(B.n == 2 && data.n == 2, "maass_check: defined for n = 2");
    LiftCoefficient c = lift_coefficient(B, data, opts);
    Int a = B.at(0, 0) / 2, b = B.at(0, 1), cc = B.at(1, 1) / 2;
    Int content = boost::multiprecision::gcd(boost::multiprecision::gcd(a, b), cc);
    if (content < 0) content = -content;
    Int det2B = det_twoB(B);
    Rational sum = 0;
    for (Int d = 1; d <= content; ++d) {
        if (content % d != 0) continue;
        Int idx = det2B / (d * d);
        auto it = data.cH.find(idx);
        require(it != data.cH.end(), "maass_check: missing c_h(" + idx.str() + ")");
        sum += Rational(int_pow(d, data.k - 1)) * it->second;
    }
    MaassCheck mc;
    mc.lift_value = c.value;
    mc.divisor_sum = sum;
    mc.status = (c.value == sum) ? MaassStatus::equal : MaassStatus::mismatch;
    return mc;
}

Rational boecherer_kohnen_alpha(long n) {
    return Rational(1) / (Rational(4 * (n - 1)) + Rational(4 * ((n - 1) / 2)) + Rational(2, n + 2));
}

namespace {

float100 to_float(const Rational& r) {
    return float100(numerator(r)) / float100(denominator(r));
}

std::string float_decimal(const float100& v, int digits) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

// base^expo for positive rational base, rational exponent; report rendering only
float100 float_pow(const Rational& base, const Rational& expo) {
    check_invariant(base > 0, "float_pow: base must be positive");
    return boost::multiprecision::exp(boost::multiprecision::log(to_float(base)) * to_float(expo));
}

} // namespace

BoundReport bound_report(const HalfIntegralMatrix& B, const EigenformData& data,
                         const Rational& epsilon, const LiftOptions& opts) {
    BoundReport rep;
    rep.coeff = lift_coefficient(B, data, opts);
    long n = data.n, k = data.k;
    Int det2 = det_twoB(B);
    Rational detB = Rational(det2) / rat_pow(Rational(2), n);
    Rational abs_c = rep.coeff.value < 0 ? Rational(-rep.coeff.value) : rep.coeff.value;
    Rational abs_ch = rep.coeff.ch_used < 0 ? Rational(-rep.coeff.ch_used) : rep.coeff.ch_used;
    Int absd = rep.coeff.dB < 0 ? Int(-rep.coeff.dB) : rep.coeff.dB;

    auto add_row = [&](const std::string& name, const std::string& exact, const float100& dec,
                       bool assertion, bool holds) {
        rep.rows.push_back({name, exact, float_decimal(dec, 30), assertion, holds});
        if (assertion && !holds) rep.assertions_hold = false;
    };

    add_row("c", rat_to_string(rep.coeff.value), to_float(rep.coeff.value), false, true);

    // Hecke bound det(B)^{k/2}
    Rational hecke = rat_pow(detB, k / 2);
    add_row("hecke", rat_to_string(hecke), to_float(hecke), false, true);

    // classical improvement: det(B)^{k/2 - 1/(2n) - (1 - 1/n) alpha_n + eps}
    Rational bk_exp = Rational(k, 2) - Rational(1, 2 * n) -
                      (Rational(1) - Rational(1, n)) * boecherer_kohnen_alpha(n) + epsilon;
    add_row("bk", "", float_pow(detB, bk_exp), false, true);

    // |d_B|^{-n/4 + 5/12} det(2B)^{(k-1)/2 + eps}
    float100 thm31 = float_pow(Rational(absd), Rational(-n, 4) + Rational(5, 12)) *
                     float_pow(Rational(det2), Rational(k - 1, 2) + epsilon);
    add_row("thm31", "", thm31, false, true);

    // |d_B|^{1/6} det(2B)^{k/2 - (n+1)/4 + eps} prod_{i<n} G_i^{1/2}
    std::vector<Int> G(n + 1, 1);
    float100 gprod = 1;
    for (int r = 1; r < n; ++r) {
        G[r] = G_r(B, r);
        gprod *= boost::multiprecision::sqrt(to_float(Rational(G[r])));
    }
    float100 thm32 = float_pow(Rational(absd), Rational(1, 6)) *
                     float_pow(Rational(det2), Rational(k, 2) - Rational(n + 1, 4) + epsilon) * gprod;
    add_row("thm32", "", thm32, false, true);

    // explicit rows need the per-prime ledgers at p | f_B
    std::vector<std::pair<Int, std::vector<long>>> ledgers;
    GKOptions gkopts;
    gkopts.threads = opts.threads;
    gkopts.search_budget = opts.search_budget;
    for (const auto& [q, e] : factorize(rep.coeff.fB)) {
        (void)e;
        ledgers.emplace_back(q, gk_invariant(B, q, gkopts).ledger);
    }
    Rational count_prod = 1;
    for (const auto& [q, led] : ledgers)
        for (long i = 0; i < n; ++i) count_prod *= Rational(1 + led[i]);
    for (int r = 1; r <= n; ++r) {
        Int lower = 1;
        for (const auto& [q, led] : ledgers) lower *= int_pow(q, led[r - 1]);
        rep.script_e_lower.emplace_back(r, lower);
    }

    // |c| <= |c_h| f_B^{k-1} prod prod (1 + e_i^{(p)}), exact comparison
    Rational thm641 = abs_ch * Rational(int_pow(rep.coeff.fB, k - 1)) * count_prod;
    add_row("thm641", rat_to_string(thm641), to_float(thm641), true, abs_c <= thm641);

    // |c| <= |c_h| f_B^{k-(n+1)/2} prod G_i^{1/2} prod prod (1 + e_i^{(p)}),
    // compared through squares to stay exact
    Rational base641 = abs_ch * count_prod;
    Rational thm642_sq = base641 * base641 * rat_pow(Rational(rep.coeff.fB), 2 * k - n - 1);
    for (int r = 1; r < n; ++r) thm642_sq *= Rational(G[r]);
    bool holds642 = abs_c * abs_c <= thm642_sq;
    float100 thm642 = boost::multiprecision::sqrt(to_float(thm642_sq));
    add_row("thm642", "", thm642, true, holds642);

    return rep;
}

std::string bound_report_csv_header() {
    return "matrix-id,det2B,dB,fB,c,hecke,bk,thm31,thm32,thm641,thm642,maass-status,"
           "c_dec,hecke_dec,thm641_dec";
}

namespace {

const BoundReportRow& row_named(const BoundReport& rep, const std::string& name) {
    for (const auto& r : rep.rows)
        if (r.name == name) return r;
    throw invariant_error("bound report row missing: " + name);
}

} // namespace

std::string bound_report_csv_row(const std::string& id, const HalfIntegralMatrix& B,
                                 const BoundReport& rep) {
    std::ostringstream os;
    const char* maass = rep.maass == MaassStatus::equal
                            ? "equal"
                            : (rep.maass == MaassStatus::mismatch ? "mismatch" : "skipped");
    os << id << "," << det_twoB(B).str() << "," << rep.coeff.dB.str() << ","
       << rep.coeff.fB.str() << "," << row_named(rep, "c").exact << ","
       << row_named(rep, "hecke").exact << "," << row_named(rep, "bk").decimal << ","
       << row_named(rep, "thm31").decimal << "," << row_named(rep, "thm32").decimal << ","
       << row_named(rep, "thm641").exact << "," << row_named(rep, "thm642").decimal << ","
       << maass << "," << to_decimal(rat_from_string(row_named(rep, "c").exact), 30) << ","
       << to_decimal(rat_from_string(row_named(rep, "hecke").exact), 30) << ","
       << to_decimal(rat_from_string(row_named(rep, "thm641").exact), 30);
    return os.str();
}

} // namespace gksiegel
