#include "expdensity/coefficients.hpp"

#include <mpfr.h>

#include <cassert>
#include <stdexcept>

#include <json.hpp>

namespace expdensity {

uint64_t PartitionVector::total_parts() const {
    uint64_t total = 0;
    for (uint32_t m : b) total += m;
    return total;
}

std::string CoeffTable::to_json() const {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int n = 2; n <= max_n; ++n) {
        nlohmann::ordered_json row;
        row["n"] = n;
        row["f"] = f_at(n).get_str();
        row["M"] = {{"num", M_at(n).get_num().get_str()},
                    {"den", M_at(n).get_den().get_str()}};
        rows.push_back(std::move(row));
    }
    return rows.dump();
}

std::vector<mpz_class> f_recursive(const VSeq& v, int N) {
    if (N < 2 || N > kMaxRecursionN)
        throw std::invalid_argument("f_recursive: N out of range");
    if (v.max_index() < N)
        throw std::invalid_argument("f_recursive: v not defined up to N");
    std::vector<mpz_class> f;
    f.reserve(static_cast<size_t>(N - 1));
    for (int n = 2; n <= N; ++n) {
        mpz_class acc = n * mpz_class(v.at(n));
        for (int j = 2; j <= n - 2; ++j) {
            int vn = v.at(n - j);
            if (vn == 1)
                acc -= f[static_cast<size_t>(j - 2)];
            else if (vn == -1)
                acc += f[static_cast<size_t>(j - 2)];
        }
        f.push_back(std::move(acc));
    }
    return f;
}

namespace {

void gen_partitions(int part, int remaining, int max_part,
                    std::vector<uint32_t>& b, int n,
                    std::vector<PartitionVector>& out) {
    if (part > max_part) {
        if (remaining == 0) out.push_back(PartitionVector{n, b});
        return;
    }
    size_t idx = static_cast<size_t>(part - 2);
    for (int c = 0; c * part <= remaining; ++c) {
        b[idx] = static_cast<uint32_t>(c);
        gen_partitions(part + 1, remaining - c * part, max_part, b, n, out);
    }
    b[idx] = 0;
}

} // namespace

std::vector<PartitionVector> enumerate_partitions_min2(int n, int max_part) {
    if (n < 2) throw std::invalid_argument("enumerate_partitions_min2: n must be >= 2");
    if (max_part < 2 || max_part > n)
        throw std::invalid_argument("enumerate_partitions_min2: need 2 <= max_part <= n");
    std::vector<PartitionVector> out;
    std::vector<uint32_t> b(static_cast<size_t>(max_part - 1), 0);
    gen_partitions(2, n, max_part, b, n, out);
    return out;
}

mpz_class t_coefficient(const PartitionVector& p) {
    const int m = p.n;
    if (m < 2) throw std::invalid_argument("t_coefficient: partition of n >= 2 required");
    uint64_t weighted = 0;
    uint64_t B = 0;
    for (size_t i = 0; i < p.b.size(); ++i) {
        weighted += static_cast<uint64_t>(i + 2) * p.b[i];
        B += p.b[i];
    }
    if (weighted != static_cast<uint64_t>(m) || B == 0)
        throw std::invalid_argument("t_coefficient: not a partition of n with parts >= 2");

    if (B == 1 && p.multiplicity_of(m) == 1) return mpz_class(m);

    // All parts are <= m-2 here: a part of size m-1 would leave remainder 1.
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(B - 1));
    num *= m;
    mpz_class den = 1;
    for (uint32_t mult : p.b) {
        if (mult < 2) continue;
        mpz_class fac;
        mpz_fac_ui(fac.get_mpz_t(), mult);
        den *= fac;
    }
    mpq_class q(num, den);
    q.canonicalize();
    if (q.get_den() != 1)
        throw std::logic_error("t_coefficient: non-integer coefficient");
    mpz_class t = q.get_num();
    if (B % 2 == 0) t = -t;
    return t;
}

namespace {

// prod_j v_j^(b_j) for v_j in {-1,0,1}; 0 if any used v_j is zero.
int monomial_sign(const VSeq& v, const PartitionVector& p) {
    int sign = 1;
    for (size_t i = 0; i < p.b.size(); ++i) {
        if (p.b[i] == 0) continue;
        int vj = v.at(static_cast<int>(i + 2));
        if (vj == 0) return 0;
        if (vj == -1 && (p.b[i] & 1)) sign = -sign;
    }
    return sign;
}

} // namespace

mpz_class f_partition(const VSeq& v, int n) {
    if (n < 2) throw std::invalid_argument("f_partition: n must be >= 2");
    if (v.max_index() < n)
        throw std::invalid_argument("f_partition: v not defined up to n");
    mpz_class acc = 0;
    for (const PartitionVector& p : enumerate_partitions_min2(n, n)) {
        int sign = monomial_sign(v, p);
        if (sign == 0) continue;
        mpz_class t = t_coefficient(p);
        acc += sign > 0 ? t : -t;
    }
    return acc;
}

std::vector<mpq_class> M_recursive(const VSeq& v, int N) {
    if (N < 2 || N > kMaxRecursionN)
        throw std::invalid_argument("M_recursive: N out of range");
    if (N >= 4 && v.max_index() < N - 2)
        throw std::invalid_argument("M_recursive: v not defined up to N-2");
    std::vector<mpq_class> M;
    M.reserve(static_cast<size_t>(N - 1));
    M.emplace_back(0); // M_2
    if (N >= 3) M.emplace_back(0); // M_3
    for (int n = 4; n <= N; ++n) {
        mpq_class acc = 0;
        for (int j = 2; j <= n - 2; ++j) {
            int vnj = v.at(n - j);
            if (vnj == 0) continue;
            mpq_class inner = mpq_class(v.at(j)) + M[static_cast<size_t>(j - 2)];
            acc += j * vnj * inner;
        }
        M.push_back(acc / mpq_class(-n));
    }
    return M;
}

mpq_class M_explicit(const VSeq& v, int n) {
    if (n < 4) throw std::invalid_argument("M_explicit: n must be >= 4");
    if (v.max_index() < n - 2)
        throw std::invalid_argument("M_explicit: v not defined up to n-2");
    mpq_class acc = 0;
    for (const PartitionVector& p : enumerate_partitions_min2(n, n - 2)) {
        int sign = monomial_sign(v, p);
        if (sign == 0) continue;
        uint64_t B = p.total_parts();
        mpz_class num;
        mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(B - 1));
        mpz_class den = 1;
        for (uint32_t mult : p.b) {
            if (mult < 2) continue;
            mpz_class fac;
            mpz_fac_ui(fac.get_mpz_t(), mult);
            den *= fac;
        }
        mpq_class term(num, den);
        term.canonicalize();
        if (B % 2 == 0) term = -term;
        acc += sign > 0 ? term : -term;
    }
    return acc;
}

mpz_class cauchy_f_limit(int n) {
    assert(n >= 2);
    mpfr_t t;
    mpfr_init2(t, 128);
    mpfr_const_log2(t, MPFR_RNDD);
    mpfr_mul_ui(t, t, static_cast<unsigned long>(n), MPFR_RNDD);
    mpfr_mul_2si(t, t, n, MPFR_RNDD);
    mpz_class limit;
    mpfr_get_z(limit.get_mpz_t(), t, MPFR_RNDD);
    mpfr_clear(t);
    return limit;
}

CoeffTable make_coeff_table(const VSeq& v, int N) {
    CoeffTable table;
    table.max_n = N;
    table.f = f_recursive(v, N);
    table.M = M_recursive(v, N);
    for (int n = 2; n <= N; ++n) {
        mpq_class expected = n * (mpq_class(v.at(n)) + table.M_at(n));
        if (expected != table.f_at(n))
            throw std::logic_error("coeff table: f_n != n*(v_n + M_n) at n=" +
                                   std::to_string(n));
        if (::abs(table.f_at(n)) > cauchy_f_limit(n))
            throw std::logic_error("coeff table: Cauchy bound violated at n=" +
                                   std::to_string(n));
    }
    return table;
}

} // namespace expdensity
