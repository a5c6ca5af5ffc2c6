#include "expdensity/density_engine.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "expdensity/coefficients.hpp"
#include "expdensity/errors.hpp"

namespace expdensity {

std::string DensityResult::to_json() const {
    nlohmann::ordered_json j;
    j["method"] = method == DensityMethod::hybrid ? "hybrid" : "euler-truncated";
    j["set"] = set_spec;
    j["digits"] = digits_requested;
    j["h"] = h.to_fixed(digits_requested);
    j["log_h"] = log_h.to_fixed(digits_requested);
    j["error_bound"] = error_bound.to_sci(3);
    j["B"] = prime_cutoff_B;
    j["N"] = series_terms_N;
    return j.dump();
}

mpfr_prec_t digits_to_prec(int digits) {
    if (digits < 1 || digits > kMaxDigits)
        throw SpecError("digits must be in [1, " + std::to_string(kMaxDigits) + "]");
    auto bits = static_cast<mpfr_prec_t>(
        std::ceil((digits + 15) * std::log2(10.0))) + 1;
    return std::max(bits, static_cast<mpfr_prec_t>(4 * digits));
}

uint64_t resolve_prime_cutoff(uint64_t requested) {
    return next_prime_at_least(std::max<uint64_t>(requested, 5));
}

namespace {

constexpr mpfr_prec_t kBoundPrec = 96;

// Series terms needed at prime p so that x^(K+1)/(1-x) <= delta, x = 1/p.
// 1/(1-x) <= 2, so K with (K+1)*log2(p) >= -log2(delta) + 1 suffices.
int terms_needed(uint64_t p, double neg_log2_delta) {
    double k = (neg_log2_delta + 1.0) / std::log2(static_cast<double>(p));
    return std::max(1, static_cast<int>(std::ceil(k)) + 1);
}

struct LogFactor {
    BigReal value;
    BigReal bound;
    long ops = 0;
};

// log F_S(1/p) from a shared v table. neg_log2_delta fixes the truncation
// threshold delta = 2^-neg_log2_delta; support_end, when present, is the
// last index that can carry a nonzero v (beyond it the series is zero and
// the truncation bound vanishes).
LogFactor log_factor_eval(const VSeq& v, std::optional<int> support_end, uint64_t p,
                          mpfr_prec_t prec, double neg_log2_delta) {
    const int K_target = terms_needed(p, neg_log2_delta);
    const bool terminates = support_end && *support_end <= K_target;
    const int K = terminates ? *support_end : K_target;

    long ops = 0;
    BigReal x = BigReal::of_ulong(1, prec) / BigReal::of_ulong(static_cast<unsigned long>(p), prec);
    ++ops;
    BigReal sum(prec);
    BigReal power = x; // x^i for the current i
    for (int i = 2; i <= K && i <= v.max_index(); ++i) {
        power *= x;
        ++ops;
        int vi = v.at(i);
        if (vi == 1) {
            sum += power;
            ++ops;
        } else if (vi == -1) {
            sum -= power;
            ++ops;
        }
    }
    BigReal f_val = BigReal::of_ulong(1, prec) + sum;
    ++ops;
    BigReal value = f_val.log();
    ++ops;

    BigReal bound(kBoundPrec);
    if (!terminates) {
        // delta / F_low with F_low = 1 - 1/(p(p-1)), inflated a hair so the
        // perturbation of the log argument is covered as well.
        mpq_class inv_flow(p * (p - 1), p * (p - 1) - 1);
        bound = BigReal::mul_up(
            BigReal::mul_up(BigReal::pow2(-static_cast<long>(neg_log2_delta), kBoundPrec),
                            BigReal::of(inv_flow, kBoundPrec)),
            BigReal::add_up(BigReal::of_ulong(1, kBoundPrec), BigReal::pow2(-30)));
    }
    return LogFactor{std::move(value), std::move(bound), ops};
}

// ln2 * (B/N) * (2/B)^(N+1) / (1 - 2/B), rounded up.
BigReal cauchy_series_tail(uint64_t B, int N) {
    BigReal two_over_b = BigReal::div_up(BigReal::of_ulong(2, kBoundPrec),
                                         BigReal::of_ulong(B, kBoundPrec));
    BigReal q(kBoundPrec);
    mpfr_pow_ui(q.raw(), two_over_b.raw(), static_cast<unsigned long>(N + 1), MPFR_RNDU);
    BigReal one_minus(kBoundPrec);
    mpfr_ui_sub(one_minus.raw(), 1, two_over_b.raw(), MPFR_RNDD);
    BigReal t = BigReal::mul_up(BigReal::log2_const(kBoundPrec, MPFR_RNDU),
                                BigReal::div_up(BigReal::of_ulong(B, kBoundPrec),
                                                BigReal::of_ulong(static_cast<unsigned long>(N), kBoundPrec)));
    t = BigReal::mul_up(t, q);
    return BigReal::div_up(t, one_minus);
}

int default_terms(uint64_t B, int digits) {
    const double target_log2 = -(digits + 5) * std::log2(10.0) - 1.0;
    const double log2_b = std::log2(static_cast<double>(B));
    for (int N = 4; N <= kMaxRecursionN; ++N) {
        double t = std::log2(std::log(2.0)) + log2_b - std::log2(static_cast<double>(N)) +
                   (N + 1) * (1.0 - log2_b) - std::log2(1.0 - 2.0 / static_cast<double>(B));
        if (t <= target_log2) return N;
    }
    throw SpecError("series does not reach the requested digits within the term cap");
}

DensityResult exact_one_result(const ExponentSet& set, int digits, DensityMethod method,
                               uint64_t cutoff) {
    mpfr_prec_t prec = digits_to_prec(digits);
    DensityResult r{BigReal::of_ulong(1, prec), BigReal(prec), BigReal(kBoundPrec),
                    cutoff, 0, digits, method, set.spec_string()};
    return r;
}

// |delta_h| <= h * |delta_log| * (1 + |delta_log|), plus slack for the final
// exp rounding which is already inside the ops allowance.
BigReal transport_through_exp(const BigReal& h, const BigReal& log_bound) {
    BigReal h_up = BigReal::add_up(h.round_to(kBoundPrec, MPFR_RNDU),
                                   BigReal::pow2(-40, kBoundPrec));
    BigReal grow = BigReal::add_up(BigReal::of_ulong(1, kBoundPrec), log_bound);
    return BigReal::mul_up(BigReal::mul_up(h_up, log_bound), grow);
}

void check_density_range(const BigReal& h, const BigReal& bound, mpfr_prec_t prec) {
    BigReal pi = BigReal::pi(prec);
    BigReal lower = BigReal::of_ulong(6, prec) / (pi * pi);
    BigReal slack = bound + BigReal::pow2(-static_cast<long>(prec) + 8);
    if (h < lower - slack || h > BigReal::of_ulong(1, prec) + slack)
        throw std::logic_error("density outside [6/pi^2, 1] beyond the error bound");
}

} // namespace

BoundedReal F_S_log_at(const ExponentSet& set, uint64_t p, mpfr_prec_t prec) {
    if (p < 2) throw std::invalid_argument("F_S_log_at: p must be a prime >= 2");
    const double neg_log2_delta = static_cast<double>(prec) + 8;
    int need = terms_needed(p, neg_log2_delta);
    if (auto end = set.v_support_end()) need = std::min(need, std::max(2, *end));
    VSeq v = set.v_seq(std::max(2, need));
    LogFactor lf = log_factor_eval(v, set.v_support_end(), p, prec, neg_log2_delta);
    BigReal bound = BigReal::add_up(
        lf.bound, BigReal::mul_up(BigReal::of_long(lf.ops, kBoundPrec),
                                  BigReal::pow2(1 - static_cast<long>(prec), kBoundPrec)));
    return BoundedReal{std::move(lf.value), std::move(bound)};
}

DensityResult density_hybrid(const ExponentSet& set, const HybridOptions& opts) {
    const int digits = opts.digits;
    const mpfr_prec_t prec = digits_to_prec(digits);
    const uint64_t B = resolve_prime_cutoff(opts.prime_cutoff.value_or(kDefaultPrimeCutoff));

    const std::optional<int> support_end = set.v_support_end();
    if (support_end && *support_end <= 1)
        return exact_one_result(set, digits, DensityMethod::hybrid, B);

    int N = opts.terms ? *opts.terms : default_terms(B, digits);
    if (N < 2 || N > kMaxRecursionN)
        throw SpecError("terms must be in [2, " + std::to_string(kMaxRecursionN) + "]");

    // Truncation threshold for each log-factor series: 10^-(digits+5) / 2^12.
    const double neg_log2_delta =
        (digits + 5) * std::log2(10.0) + 12.0;

    const int k_at_2 = terms_needed(2, neg_log2_delta);
    int v_len = std::max(N, k_at_2);
    if (support_end) v_len = std::max(N, std::min(k_at_2, std::max(2, *support_end)));
    VSeq v = set.v_seq(v_len);
    CoeffTable table = make_coeff_table(v, N);

    PrimeTable primes = sieve_primes(B);
    long ops = 0;
    BigReal log_h(prec + 32);
    BigReal bound(kBoundPrec);

    for (uint64_t p : primes.primes) {
        LogFactor lf = log_factor_eval(v, support_end, p, prec, neg_log2_delta);
        log_h += lf.value;
        bound = BigReal::add_up(bound, lf.bound);
        ops += lf.ops + 1;
    }

    for (int n = 2; n <= N; ++n) {
        const mpz_class& fn = table.f_at(n);
        if (fn == 0) continue;
        BoundedReal tail = prime_zeta_tail(static_cast<unsigned long>(n), B, prec);
        mpq_class ratio(fn, n);
        ratio.canonicalize();
        BigReal coef = BigReal::of(ratio, prec);
        log_h += coef * tail.value;
        BigReal coef_up(kBoundPrec);
        mpfr_abs(coef_up.raw(), coef.raw(), MPFR_RNDU);
        bound = BigReal::add_up(bound, BigReal::mul_up(coef_up, tail.bound));
        ops += 3;
    }

    bound = BigReal::add_up(bound, cauchy_series_tail(B, N));
    ops += 8; // final exp and assembly
    bound = BigReal::add_up(bound,
                            BigReal::mul_up(BigReal::of_long(ops, kBoundPrec),
                                            BigReal::pow2(1 - static_cast<long>(prec), kBoundPrec)));

    BigReal h = log_h.exp();
    BigReal h_bound = transport_through_exp(h, bound);

    if (h_bound > BigReal::ten_pow(-digits, kBoundPrec, MPFR_RNDD))
        throw std::logic_error("hybrid error bound exceeds the requested digits");
    check_density_range(h, h_bound, prec);

    return DensityResult{std::move(h), std::move(log_h), std::move(h_bound),
                         B, N, digits, DensityMethod::hybrid, set.spec_string()};
}

DensityResult density_euler_truncated(const ExponentSet& set, uint64_t prime_limit,
                                      int digits) {
    if (prime_limit < 2)
        throw std::invalid_argument("density_euler_truncated: prime limit must be >= 2");
    const mpfr_prec_t prec = digits_to_prec(digits);

    const std::optional<int> support_end = set.v_support_end();
    if (support_end && *support_end <= 1)
        return exact_one_result(set, digits, DensityMethod::euler_truncated, prime_limit);

    const double neg_log2_delta = static_cast<double>(prec) + 8;
    int v_len = terms_needed(2, neg_log2_delta);
    if (support_end) v_len = std::min(v_len, std::max(2, *support_end));
    VSeq v = set.v_seq(std::max(2, v_len));

    PrimeTable primes = sieve_primes(prime_limit);
    long ops = 0;
    BigReal log_h(prec + 32);
    BigReal bound(kBoundPrec);
    for (uint64_t p : primes.primes) {
        LogFactor lf = log_factor_eval(v, support_end, p, prec, neg_log2_delta);
        log_h += lf.value;
        bound = BigReal::add_up(bound, lf.bound);
        ops += lf.ops + 1;
    }

    // Omitted factors: sum_{p>X} |log F_S(1/p)| <= sum_{m>X} 1.4 m^-2 <= 1.4/X,
    // valid once every omitted prime has 1/p <= 1/5. For X = 2 the p = 3
    // factor gets the explicit bound -log(1 - 1/6) < 0.19.
    BigReal omitted(kBoundPrec);
    if (prime_limit >= 3) {
        mpq_class q(7, 1);
        q /= 5 * mpz_class(static_cast<unsigned long>(prime_limit));
        omitted = BigReal::of(q, kBoundPrec);
    } else {
        omitted = BigReal::add_up(BigReal::of(mpq_class(19, 100), kBoundPrec),
                                  BigReal::of(mpq_class(7, 15), kBoundPrec));
    }
    bound = BigReal::add_up(bound, omitted);
    ops += 8;
    bound = BigReal::add_up(bound,
                            BigReal::mul_up(BigReal::of_long(ops, kBoundPrec),
                                            BigReal::pow2(1 - static_cast<long>(prec), kBoundPrec)));

    BigReal h = log_h.exp();
    BigReal h_bound = transport_through_exp(h, bound);
    check_density_range(h, h_bound, prec);

    return DensityResult{std::move(h), std::move(log_h), std::move(h_bound),
                         prime_limit, 0, digits, DensityMethod::euler_truncated,
                         set.spec_string()};
}

} // namespace expdensity
