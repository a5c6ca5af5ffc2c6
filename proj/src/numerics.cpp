#include "expdensity/numerics.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "expdensity/errors.hpp"

namespace expdensity {

namespace {
// vector<bool> sieve of this size is ~125 MB.
constexpr uint64_t kSieveLimitMax = 1'000'000'000;
} // namespace

PrimeTable sieve_primes(uint64_t limit) {
    if (limit < 2) throw std::invalid_argument("sieve_primes: limit must be >= 2");
    if (limit > kSieveLimitMax)
        throw BudgetError("sieve_primes: limit " + std::to_string(limit) +
                          " exceeds the sieve budget of " + std::to_string(kSieveLimitMax));
    std::vector<bool> composite(limit + 1, false);
    PrimeTable table;
    table.limit = limit;
    for (uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        table.primes.push_back(p);
        for (uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    return table;
}

uint64_t next_prime_at_least(uint64_t n) {
    assert(n >= 2);
    for (uint64_t c = n;; ++c) {
        bool prime = true;
        for (uint64_t d = 2; d * d <= c; ++d)
            if (c % d == 0) {
                prime = false;
                break;
            }
        if (prime) return c;
    }
}

int moebius(uint64_t k) {
    assert(k >= 1);
    int sign = 1;
    for (uint64_t d = 2; d * d <= k; ++d) {
        if (k % d == 0) {
            k /= d;
            if (k % d == 0) return 0;
            sign = -sign;
        }
    }
    if (k > 1) sign = -sign;
    return sign;
}

BigReal zeta(unsigned long s, mpfr_prec_t prec) {
    if (s < 2) throw std::invalid_argument("zeta: argument must be >= 2");
    BigReal r(prec + 40);
    mpfr_zeta_ui(r.raw(), s, MPFR_RNDN);
    return r;
}

namespace {

// log zeta(m) with absolute error <= 2^-E. zeta(m) - 1 ~ 2^-m, so the
// evaluation runs at E + m + 16 bits to keep that difference representable.
BigReal log_zeta_abs(unsigned long m, mpfr_prec_t E) {
    mpfr_prec_t pz = E + static_cast<mpfr_prec_t>(m) + 16;
    BigReal z(pz);
    mpfr_zeta_ui(z.raw(), m, MPFR_RNDN);
    return z.log();
}

// P(n) with absolute error <= 2^-E.
BigReal prime_zeta_abs(unsigned long n, mpfr_prec_t E) {
    assert(n >= 2);
    // |mu(k)/k * log zeta(nk)| <= (3/k) 2^-nk, so the tail from k onward is
    // below (4/k) 2^-nk. Stop at the first k where that is <= 2^-(E+1).
    unsigned long k_stop = 1;
    while (true) {
        double tail_log2 = 2.0 - std::log2(static_cast<double>(k_stop)) -
                           static_cast<double>(n) * static_cast<double>(k_stop);
        if (tail_log2 <= -static_cast<double>(E + 1)) break;
        ++k_stop;
        if (k_stop > 100000)
            throw std::logic_error("prime_zeta: truncation index runaway");
    }
    BigReal acc(E + 32);
    for (unsigned long k = 1; k < k_stop; ++k) {
        int mu = moebius(k);
        if (mu == 0) continue;
        BigReal term = log_zeta_abs(n * k, E + 16).round_to(E + 32).div_ui(k);
        if (mu > 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

} // namespace

BigReal prime_zeta(unsigned long n, mpfr_prec_t prec) {
    if (n < 2) throw std::invalid_argument("prime_zeta: argument must be >= 2");
    return prime_zeta_abs(n, prec + 32);
}

BoundedReal prime_zeta_tail(unsigned long n, uint64_t B, mpfr_prec_t prec) {
    if (n < 2) throw std::invalid_argument("prime_zeta_tail: n must be >= 2");
    if (B < 2) throw std::invalid_argument("prime_zeta_tail: B must be >= 2");

    // Extra bits cancelled when subtracting the head sum from P(n).
    auto cancel = static_cast<mpfr_prec_t>(
        std::ceil(static_cast<double>(n - 1) * std::log2(static_cast<double>(B))));
    mpfr_prec_t E = prec + cancel + 16;
    mpfr_prec_t work = E + 48;

    BigReal acc = prime_zeta_abs(n, E + 8).round_to(work);
    PrimeTable head = sieve_primes(B);
    for (uint64_t p : head.primes) {
        BigReal t = BigReal::of_ulong(static_cast<unsigned long>(p), work)
                        .pow_si(-static_cast<long>(n));
        acc -= t;
    }
    BigReal value = acc.round_to(prec + 32);

    // 2^-(E+4) covers the P(n) truncation, the head roundings at `work`
    // bits, and the final rounding, each several binades smaller.
    BigReal bound = BigReal::pow2(-static_cast<long>(E + 4));
    return BoundedReal{std::move(value), std::move(bound)};
}

} // namespace expdensity
