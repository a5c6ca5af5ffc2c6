#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "expdensity/bigreal.hpp"
#include "expdensity/exponent_set.hpp"
#include "expdensity/numerics.hpp"

namespace expdensity {

enum class DensityMethod { hybrid, euler_truncated };

/// A computed density together with a guaranteed absolute error bound and
/// the truncation parameters that produced it. Immutable value.
struct DensityResult {
    BigReal h;
    BigReal log_h;
    BigReal error_bound; // total guaranteed |h_computed - h_true|
    uint64_t prime_cutoff_B = 0; // prime cutoff (hybrid) or product limit X (euler)
    int series_terms_N = 0;      // 0 for the euler method
    int digits_requested = 0;
    DensityMethod method = DensityMethod::hybrid;
    std::string set_spec;

    std::string to_json() const;
};

/// log F_S(1/p) with the series truncated once the tail bound
/// x^(K+1)/(1-x) drops below 2^-(prec+8); the returned bound covers that
/// truncation transported through the logarithm. Exact zero bound when the
/// set's v-support ends inside the evaluated range (the series is then a
/// polynomial evaluated in full). F_S(1/p) >= 1 - 1/(p(p-1)) > 0 always.
BoundedReal F_S_log_at(const ExponentSet& set, uint64_t p, mpfr_prec_t prec);

inline constexpr int kMaxDigits = 1000;
inline constexpr uint64_t kDefaultPrimeCutoff = 101;

/// Working precision for D requested decimal digits:
/// max(ceil((D+15)*log2(10)), 4*D) bits.
mpfr_prec_t digits_to_prec(int digits);

/// Raises a requested prime cutoff to the next prime, with a floor of 5
/// (the certified series tail needs 2/B < 1 with real headroom).
uint64_t resolve_prime_cutoff(uint64_t requested);

struct HybridOptions {
    int digits = 20;
    std::optional<uint64_t> prime_cutoff; // default kDefaultPrimeCutoff
    std::optional<int> terms;             // default: smallest N meeting the tail target
};

/// Production path: log h = sum_{p<=B} log F_S(1/p)
///                        + sum_{n=2..N} (f_n/n) P_{>B}(n),
/// h = exp(log h). The error bound sums the series tail
/// ln2 * (B/N) (2/B)^(N+1) / (1 - 2/B) from the Cauchy coefficient bound,
/// per-prime truncation bounds, prime-zeta-tail bounds, and a rounding
/// allowance of (operation count) * 2^(1-prec), transported through exp.
DensityResult density_hybrid(const ExponentSet& set, const HybridOptions& opts = {});

/// Cross-check path: the raw truncated product prod_{p<=X} F_S(1/p), with
/// the omitted factors bounded by 1.4/X (for X >= 3; the lone p=3 factor is
/// bounded explicitly when X = 2).
DensityResult density_euler_truncated(const ExponentSet& set, uint64_t prime_limit,
                                      int digits = 20);

} // namespace expdensity
