#pragma once

#include <cstdint>
#include <vector>

#include "expdensity/bigreal.hpp"

namespace expdensity {

/// All primes <= limit, ascending. Immutable after construction.
struct PrimeTable {
    uint64_t limit = 0;
    std::vector<uint64_t> primes;
};

/// Plain Eratosthenes sieve. Throws BudgetError beyond the hard size guard.
PrimeTable sieve_primes(uint64_t limit);

/// Smallest prime >= n (n >= 2), by trial division.
uint64_t next_prime_at_least(uint64_t n);

/// Moebius function via trial factorization.
int moebius(uint64_t k);

/// Riemann zeta at an integer argument s >= 2.
/// Absolute error <= 2^-(prec+32); the returned value carries prec+40 bits.
BigReal zeta(unsigned long s, mpfr_prec_t prec);

/// Prime zeta P(n) = sum over primes of p^-n, n >= 2, through the
/// Moebius/log-zeta inversion P(n) = sum_{k>=1} mu(k)/k * log zeta(nk),
/// truncated once the geometric tail bound (4/k)*2^-nk drops below target.
/// Absolute error <= 2^-(prec+32).
BigReal prime_zeta(unsigned long n, mpfr_prec_t prec);

/// A value together with a guaranteed absolute error bound (bound is an
/// upper bound on |value - truth|, accumulated with upward rounding).
struct BoundedReal {
    BigReal value;
    BigReal bound;
};

/// Tail-restricted prime zeta P_{>B}(n) = P(n) - sum_{p<=B} p^-n.
/// The subtraction is done at a precision elevated by ~(n-1)*log2(B) bits so
/// the cancellation between P(n) ~ 2^-n and the head leaves a result that is
/// still accurate relative to its own scale B^(1-n)/(n-1); the reported
/// bound is <= 2^-(prec+4) * B^(1-n) up to a small constant. The true value
/// satisfies 0 < P_{>B}(n) <= B^(1-n)/(n-1).
BoundedReal prime_zeta_tail(unsigned long n, uint64_t B, mpfr_prec_t prec);

} // namespace expdensity
