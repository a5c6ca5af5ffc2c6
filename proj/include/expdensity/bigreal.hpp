#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace expdensity {

/// Arbitrary-precision real value with an explicit binary working precision.
///
/// Semantics kept deliberately rigid for reproducibility: every operation
/// rounds to nearest at a fixed precision (binary operators use the larger
/// operand precision), there is no mid-computation precision adaptation, and
/// results are therefore bit-identical across runs. One rounding introduces
/// relative error at most 2^(1-precision_bits).
///
/// Error bounds are not an enclosure type here; callers carry them as
/// separate values, using the *_up helpers (round-toward-+inf) so that
/// accumulated bounds never shrink.
class BigReal {
public:
    explicit BigReal(mpfr_prec_t prec = 64); // zero at the given precision
    BigReal(const BigReal& o);
    BigReal(BigReal&& o) noexcept;
    BigReal& operator=(const BigReal& o);
    BigReal& operator=(BigReal&& o) noexcept;
    ~BigReal();

    static BigReal of_long(long v, mpfr_prec_t prec);
    static BigReal of_ulong(unsigned long v, mpfr_prec_t prec);
    static BigReal of_double(double v, mpfr_prec_t prec);
    static BigReal of(const mpz_class& v, mpfr_prec_t prec);
    static BigReal of(const mpq_class& v, mpfr_prec_t prec);
    static BigReal parse(const std::string& decimal, mpfr_prec_t prec);
    static BigReal pi(mpfr_prec_t prec);
    static BigReal log2_const(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static BigReal pow2(long e, mpfr_prec_t prec = 64); // exact 2^e
    static BigReal ten_pow(long e, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);

    mpfr_prec_t precision_bits() const;

    BigReal round_to(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) const;

    friend BigReal operator+(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a, const BigReal& b);
    friend BigReal operator*(const BigReal& a, const BigReal& b);
    friend BigReal operator/(const BigReal& a, const BigReal& b);
    BigReal& operator+=(const BigReal& b);
    BigReal& operator-=(const BigReal& b);
    BigReal& operator*=(const BigReal& b);

    BigReal operator-() const;
    BigReal abs() const;
    BigReal log() const;
    BigReal exp() const;
    BigReal pow_si(long e) const;
    BigReal mul_2si(long e) const; // exact scaling by 2^e
    BigReal div_ui(unsigned long d) const;

    // Round-up arithmetic for error-bound bookkeeping.
    static BigReal add_up(const BigReal& a, const BigReal& b);
    static BigReal mul_up(const BigReal& a, const BigReal& b);
    static BigReal div_up(const BigReal& a, const BigReal& b);

    int cmp(const BigReal& b) const;
    friend bool operator<(const BigReal& a, const BigReal& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return a.cmp(b) >= 0; }
    friend bool operator==(const BigReal& a, const BigReal& b) { return a.cmp(b) == 0; }

    bool is_zero() const;
    int sign() const;
    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const;

    /// Fixed-point decimal with the given count of significant digits,
    /// round-to-nearest: 0.95592..., 1.0000, -0.044039...
    std::string to_fixed(int significant_digits) const;
    /// Scientific notation with the given count of significant digits: 1.23e-26.
    std::string to_sci(int significant_digits) const;

    mpfr_srcptr raw() const { return x_; }
    mpfr_ptr raw() { return x_; }

private:
    mpfr_t x_;
};

} // namespace expdensity
