#include "gksiegel/matrix.hpp"

#include <json.hpp>

#include <boost/multiprecision/integer.hpp>

namespace gksiegel {

using nlohmann::ordered_json;

HalfIntegralMatrix parse_matrix_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw validation_error(std::string("matrix JSON parse error: ") + e.what());
    }
    require(j.contains("n") && j["n"].is_number_integer(), "matrix JSON: missing integer field 'n'");
    int n = j["n"].get<int>();
    require(n >= 1 && n <= 16, "matrix JSON: size out of range");
    require(j.contains("two_b") && j["two_b"].is_array() && j["two_b"].size() == static_cast<size_t>(n),
            "matrix JSON: 'two_b' must be an n x n array");
    HalfIntegralMatrix B;
    B.n = n;
    B.twoB.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const auto& row = j["two_b"][i];
        require(row.is_array() && row.size() == static_cast<size_t>(n),
                "matrix JSON: 'two_b' must be an n x n array");
        for (int k = 0; k < n; ++k) {
            require(row[k].is_number_integer(), "matrix JSON: entries must be integers");
            B.at(i, k) = Int(row[k].get<long long>());
        }
    }
    validate_matrix(B);
    return B;
}

std::string matrix_to_json(const HalfIntegralMatrix& B) {
    ordered_json j;
    j["n"] = B.n;
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < B.n; ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < B.n; ++k) row.push_back(static_cast<long long>(B.at(i, k)));
        rows.push_back(row);
    }
    j["two_b"] = rows;
    return j.dump();
}

void validate_matrix(const HalfIntegralMatrix& B) {
    require(B.n >= 1, "matrix: empty");
    require(B.twoB.size() == static_cast<size_t>(B.n) * B.n, "matrix: bad storage size");
    for (int i = 0; i < B.n; ++i)
        for (int k = i + 1; k < B.n; ++k)
            require(B.at(i, k) == B.at(k, i), "matrix: not symmetric");
    for (int i = 0; i < B.n; ++i)
        require(B.at(i, i) % 2 == 0, "matrix: not half-integral (odd diagonal in 2B)");
    require(det_twoB(B) != 0, "matrix: degenerate (zero determinant)");
}

Int det_int(std::vector<Int> a, int n) {
    if (n == 0) return 1;
    auto at = [&](int i, int j) -> Int& { return a[static_cast<size_t>(i) * n + j]; };
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

Int det_twoB(const HalfIntegralMatrix& B) { return det_int(B.twoB, B.n); }

bool is_positive_definite(const HalfIntegralMatrix& B) {
    for (int r = 1; r <= B.n; ++r) {
        std::vector<Int> sub(static_cast<size_t>(r) * r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) sub[static_cast<size_t>(i) * r + j] = B.at(i, j);
        if (det_int(sub, r) <= 0) return false;
    }
    return true;
}

Int disc_DB(const HalfIntegralMatrix& B) {
    Int d2 = det_twoB(B);
    check_invariant(d2 != 0, "disc_DB: degenerate matrix");
    if (B.n % 2 == 0) {
        Int s = (B.n / 2) % 2 == 0 ? 1 : -1;
        return s * d2;
    }
    check_invariant(d2 % 2 == 0, "disc_DB: det(2B) must be even for odd n");
    Int s = ((B.n - 1) / 2) % 2 == 0 ? 1 : -1;
    return s * (d2 / 2);
}

LocalInvariants local_invariants(const HalfIntegralMatrix& B, const Int& p) {
    require(is_probable_prime(p), "local_invariants: p is not prime");
    Int D = disc_DB(B);
    LocalInvariants inv;
    inv.p = p;
    inv.ordDB = ord_p(D, p);
    inv.xi = square_class(D, p).xi;
    if (B.n % 2 == 0) {
        inv.eB = inv.ordDB - disc_ideal_ord(D, p);
        check_invariant(inv.eB >= 0 && inv.eB % 2 == 0,
                        "local_invariants: e_B must be a nonnegative even integer for even n");
    } else {
        inv.eB = inv.ordDB;
    }
    return inv;
}

GlobalDiscriminantData global_discriminant(const HalfIntegralMatrix& B, const Int& trial_bound) {
    require(B.n % 2 == 0, "global_discriminant: n must be even");
    require(is_positive_definite(B), "global_discriminant: matrix not positive definite");
    Int D = disc_DB(B); // = (-1)^{n/2} det(2B)
    auto factors = factorize(D, trial_bound);
    Int squarefree = D < 0 ? -1 : 1;
    Int square_root_part = 1;
    for (const auto& [q, e] : factors) {
        if (e % 2 != 0) squarefree *= q;
        square_root_part *= int_pow(q, e / 2);
    }
    GlobalDiscriminantData g;
    Int m4 = ((squarefree % 4) + 4) % 4;
    if (m4 == 1) {
        g.dB = squarefree;
        g.fB = square_root_part;
    } else {
        g.dB = 4 * squarefree;
        check_invariant(square_root_part % 2 == 0,
                        "global_discriminant: det(2B) is not 0 or 1 mod 4");
        g.fB = square_root_part / 2;
    }
    check_invariant(g.dB * g.fB * g.fB == D, "global_discriminant: d*f^2 mismatch");
    return g;
}

std::vector<std::vector<int>> index_sequences(int n, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r);
    for (int i = 0; i < r; ++i) cur[i] = i;
    if (r == 0 || r > n) return out;
    while (true) {
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && cur[i] == n - r + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

Int minor_norm(const HalfIntegralMatrix& B, const std::vector<int>& rows,
               const std::vector<int>& cols) {
    require(rows.size() == cols.size() && !rows.empty(), "minor_norm: index sequences must match");
    int r = static_cast<int>(rows.size());
    require(r <= B.n, "minor_norm: r exceeds n");
    auto check_seq = [&](const std::vector<int>& s) {
        for (int i = 0; i < r; ++i) {
            require(s[i] >= 0 && s[i] < B.n, "minor_norm: index out of range");
            if (i > 0) require(s[i] > s[i - 1], "minor_norm: indices must be strictly increasing");
        }
    };
    check_seq(rows);
    check_seq(cols);
    std::vector<Int> sub(static_cast<size_t>(r) * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) sub[static_cast<size_t>(i) * r + j] = B.at(rows[i], cols[j]);
    Int d = det_int(sub, r);
    // 2^{2[r/2]+1-delta} det B(i;j) = 2^{2[r/2]+1-delta-r} det 2B(i;j)
    long delta = rows == cols ? 1 : 0;
    long e = 2 * (r / 2) + 1 - delta - r;
    if (e >= 0) return d * int_pow(2, e);
    check_invariant(d % 2 == 0, "minor_norm: non-integral value");
    return d / 2;
}

Int G_r(const HalfIntegralMatrix& B, int r) {
    require(r >= 1 && r <= B.n, "G_r: r out of range");
    auto seqs = index_sequences(B.n, r);
    Int g = 0;
    for (const auto& I : seqs) {
        for (const auto& J : seqs) {
            Int m = minor_norm(B, I, J);
            if (m != 0) g = boost::multiprecision::gcd(g, m);
        }
    }
    check_invariant(g != 0, "G_r: all minors vanished");
    return g < 0 ? Int(-g) : g;
}

} // namespace gksiegel
