// Shared test oracles. Everything here is independent of the production
// code paths it checks: direct summation with interval tail bounds, a DP
// partition counter, and a Moebius-sum squarefree counter.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "expdensity/bigreal.hpp"
#include "expdensity/exponent_set.hpp"
#include "expdensity/numerics.hpp"

namespace testutil {

using expdensity::BigReal;

inline std::vector<expdensity::ExponentSet> preset_corpus() {
    using expdensity::ExponentSet;
    using expdensity::Preset;
    return {ExponentSet::make_preset(Preset::all),
            ExponentSet::make_preset(Preset::only1),
            ExponentSet::make_preset(Preset::squarefree),
            ExponentSet::make_preset(Preset::pow2),
            ExponentSet::make_preset(Preset::primes1)};
}

// Deterministic mask corpus; the same seed is used by unit and acceptance
// suites so failures reproduce.
inline std::vector<expdensity::ExponentSet> random_mask_corpus(int count, uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> len_dist(1, 24);
    std::uniform_int_distribution<int> bit_dist(0, 1);
    std::vector<expdensity::ExponentSet> sets;
    sets.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        std::vector<bool> bits(static_cast<size_t>(len_dist(rng)));
        for (size_t j = 0; j < bits.size(); ++j) bits[j] = bit_dist(rng) == 1;
        sets.push_back(expdensity::ExponentSet::from_mask(bits));
    }
    return sets;
}

struct DirectSum {
    BigReal value;
    BigReal tail_bound;
};

// sum over primes <= limit of p^-n, plus the integral tail bound
// limit^(1-n)/(n-1) on what was left out.
inline DirectSum prime_zeta_direct(unsigned n, uint64_t limit, mpfr_prec_t prec) {
    auto table = expdensity::sieve_primes(limit);
    BigReal acc(prec);
    for (uint64_t p : table.primes)
        acc += BigReal::of_ulong(static_cast<unsigned long>(p), prec)
                   .pow_si(-static_cast<long>(n));
    BigReal tail = BigReal::of_ulong(static_cast<unsigned long>(limit), 96)
                       .pow_si(1 - static_cast<long>(n))
                       .div_ui(n - 1);
    tail = BigReal::mul_up(tail, BigReal::parse("1.000001", 96));
    return DirectSum{std::move(acc), std::move(tail)};
}

struct Enclosure {
    BigReal lo;
    BigReal hi;
};

// zeta(s) bracketed by the partial sum plus integral tails:
// sum_{m<=M} m^-s + (M+1)^(1-s)/(s-1)  <=  zeta(s)  <=  sum + M^(1-s)/(s-1).
inline Enclosure zeta_direct_enclosure(unsigned s, unsigned M, mpfr_prec_t prec) {
    BigReal sum(prec);
    for (unsigned m = 1; m <= M; ++m)
        sum += BigReal::of_ulong(m, prec).pow_si(-static_cast<long>(s));
    BigReal hi_tail = BigReal::of_ulong(M, prec).pow_si(1 - static_cast<long>(s)).div_ui(s - 1);
    BigReal lo_tail =
        BigReal::of_ulong(M + 1, prec).pow_si(1 - static_cast<long>(s)).div_ui(s - 1);
    BigReal pad = BigReal::pow2(-static_cast<long>(prec) + 24);
    return Enclosure{sum + lo_tail - pad, sum + hi_tail + pad};
}

// Number of squarefree integers <= x via sum_{d <= sqrt(x)} mu(d) floor(x/d^2).
inline int64_t squarefree_count_mobius(uint64_t x) {
    int64_t total = 0;
    for (uint64_t d = 1; d * d <= x; ++d) {
        int mu = expdensity::moebius(d);
        if (mu == 0) continue;
        total += mu * static_cast<int64_t>(x / (d * d));
    }
    return total;
}

// Count of partitions of n with parts in [2, max_part], by the standard
// unbounded coin-change DP.
inline uint64_t count_partitions_min2_dp(int n, int max_part) {
    std::vector<uint64_t> ways(static_cast<size_t>(n + 1), 0);
    ways[0] = 1;
    for (int part = 2; part <= max_part; ++part)
        for (int r = part; r <= n; ++r)
            ways[static_cast<size_t>(r)] += ways[static_cast<size_t>(r - part)];
    return ways[static_cast<size_t>(n)];
}

// Exact rational F_S(1/p) truncated at i <= terms, with the geometric bound
// on the neglected tail.
struct RationalF {
    mpq_class value;
    BigReal tail_bound;
};

inline RationalF f_value_rational(const expdensity::ExponentSet& set, uint64_t p, int terms) {
    expdensity::VSeq v = set.v_seq(terms);
    mpq_class acc = 1;
    mpz_class pk = p;
    for (int i = 2; i <= terms; ++i) {
        pk = pk * p;
        int vi = v.at(i);
        if (vi == 0) continue;
        mpq_class term(vi, pk);
        term.canonicalize();
        acc += term;
    }
    // tail <= x^(terms+1)/(1-x) <= 2 * p^-(terms+1)
    BigReal tail = BigReal::of_ulong(static_cast<unsigned long>(p), 96)
                       .pow_si(-(terms + 1))
                       .mul_2si(1);
    return RationalF{std::move(acc), std::move(tail)};
}

} // namespace testutil
