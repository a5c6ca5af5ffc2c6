#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "expdensity/exponent_set.hpp"

namespace expdensity {

/// Exact series coefficients for log F_S: integer f_n and rational M_n with
/// f_n = n*(v_n + M_n), indexed n = 2..max_n (M_2 = M_3 = 0). Plain value
/// object; all producers below are pure functions over immutable inputs.
struct CoeffTable {
    int max_n = 0;
    std::vector<mpz_class> f; // f[k] = f_{k+2}
    std::vector<mpq_class> M; // M[k] = M_{k+2}

    const mpz_class& f_at(int n) const { return f.at(static_cast<size_t>(n - 2)); }
    const mpq_class& M_at(int n) const { return M.at(static_cast<size_t>(n - 2)); }

    /// One row per n: {"n": ..., "f": "<decimal>", "M": {"num": "...", "den": "..."}}.
    /// Values are decimal strings; they exceed 64-bit range for large n.
    std::string to_json() const;
};

/// Multiplicity vector of a partition of n with all parts >= 2:
/// b[j-2] copies of part j, sum j*b_j = n.
struct PartitionVector {
    int n = 0;
    std::vector<uint32_t> b; // b[0] = multiplicity of part 2

    uint32_t multiplicity_of(int part) const {
        size_t i = static_cast<size_t>(part - 2);
        return i < b.size() ? b[i] : 0;
    }
    uint64_t total_parts() const; // B = sum of multiplicities
    bool operator==(const PartitionVector&) const = default;
};

inline constexpr int kMaxRecursionN = 10'000;

/// f_2..f_N by the production recurrence
/// f_n = n*v_n - sum_{j=2}^{n-2} v_{n-j} f_j, exact integer arithmetic.
std::vector<mpz_class> f_recursive(const VSeq& v, int N);

/// Every multiplicity vector with sum j*b_j = n and parts in [2, max_part],
/// exactly once, in ascending lexicographic order of (b_2, b_3, ...).
std::vector<PartitionVector> enumerate_partitions_min2(int n, int max_part);

/// Coefficient of the partition's monomial in f_n (the partitioned integer
/// is p.n): n for the single-part partition, otherwise
/// (-1)^(B-1) * (B-1)!/(b_2! ... b_{n-2}!) * n, always an exact integer
/// (checked at runtime via exact rational division).
mpz_class t_coefficient(const PartitionVector& p);

/// f_n as the partition sum over all partitions of n with parts >= 2 of
/// t_sigma * prod_j v_j^(b_j). Verification path for f_recursive.
mpz_class f_partition(const VSeq& v, int n);

/// M_2..M_N via the recursion M_n = -(1/n) sum_{j=2}^{n-2} j v_{n-j} (v_j + M_j),
/// with seeds M_2 = M_3 = 0. Needs v up to N-2.
std::vector<mpq_class> M_recursive(const VSeq& v, int N);

/// M_n as the explicit partition polynomial
/// sum over partitions of n with parts in [2, n-2] of
/// (-1)^(B-1) (B-1)!/(prod b_j!) * prod v_j^(b_j). Requires n >= 4.
mpq_class M_explicit(const VSeq& v, int n);

/// floor(n * ln2 * 2^n): every coefficient satisfies |f_n| <= n*ln2*2^n
/// (log F_S is analytic and bounded by ln 2 on |x| = 1/2).
mpz_class cauchy_f_limit(int n);

/// Builds the full table and asserts its internal contracts:
/// f_n = n*(v_n + M_n) for every n, and the Cauchy bound on every f_n.
CoeffTable make_coeff_table(const VSeq& v, int N);

} // namespace expdensity
