#include "expdensity/bigreal.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <stdexcept>

namespace expdensity {

namespace {
mpfr_prec_t checked_prec(mpfr_prec_t prec) {
    if (prec < MPFR_PREC_MIN || prec > 1'000'000)
        throw std::invalid_argument("BigReal: precision out of range");
    return prec;
}
} // namespace

BigReal::BigReal(mpfr_prec_t prec) {
    mpfr_init2(x_, checked_prec(prec));
    mpfr_set_zero(x_, 1);
}

BigReal::BigReal(const BigReal& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& o) noexcept {
    mpfr_init2(x_, MPFR_PREC_MIN);
    mpfr_swap(x_, o.x_);
}

BigReal& BigReal::operator=(const BigReal& o) {
    if (this != &o) {
        mpfr_set_prec(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
    if (this != &o) mpfr_swap(x_, o.x_);
    return *this;
}

BigReal::~BigReal() { mpfr_clear(x_); }

BigReal BigReal::of_long(long v, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_si(r.x_, v, MPFR_RNDN);
    return r;
}

BigReal BigReal::of_ulong(unsigned long v, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_ui(r.x_, v, MPFR_RNDN);
    return r;
}

BigReal BigReal::of_double(double v, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_d(r.x_, v, MPFR_RNDN);
    return r;
}

BigReal BigReal::of(const mpz_class& v, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_z(r.x_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}

BigReal BigReal::of(const mpq_class& v, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_q(r.x_, v.get_mpq_t(), MPFR_RNDN);
    return r;
}

BigReal BigReal::parse(const std::string& decimal, mpfr_prec_t prec) {
    BigReal r(prec);
    if (mpfr_set_str(r.x_, decimal.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("BigReal: cannot parse '" + decimal + "'");
    return r;
}

BigReal BigReal::pi(mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_const_pi(r.x_, MPFR_RNDN);
    return r;
}

BigReal BigReal::log2_const(mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigReal r(prec);
    mpfr_const_log2(r.x_, rnd);
    return r;
}

BigReal BigReal::pow2(long e, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_ui_2exp(r.x_, 1, e, MPFR_RNDN);
    return r;
}

BigReal BigReal::ten_pow(long e, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigReal r(prec);
    mpfr_set_ui(r.x_, 10, MPFR_RNDN);
    mpfr_pow_si(r.x_, r.x_, e, rnd);
    return r;
}

mpfr_prec_t BigReal::precision_bits() const { return mpfr_get_prec(x_); }

BigReal BigReal::round_to(mpfr_prec_t prec, mpfr_rnd_t rnd) const {
    BigReal r(prec);
    mpfr_set(r.x_, x_, rnd);
    return r;
}

namespace {
mpfr_prec_t join_prec(const BigReal& a, const BigReal& b) {
    return std::max(a.precision_bits(), b.precision_bits());
}
} // namespace

BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b));
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b));
    mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b));
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b));
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigReal& BigReal::operator+=(const BigReal& b) { return *this = *this + b; }
BigReal& BigReal::operator-=(const BigReal& b) { return *this = *this - b; }
BigReal& BigReal::operator*=(const BigReal& b) { return *this = *this * b; }

BigReal BigReal::operator-() const {
    BigReal r(precision_bits());
    mpfr_neg(r.x_, x_, MPFR_RNDN);
    return r;
}

BigReal BigReal::abs() const {
    BigReal r(precision_bits());
    mpfr_abs(r.x_, x_, MPFR_RNDN);
    return r;
}

BigReal BigReal::log() const {
    BigReal r(precision_bits());
    mpfr_log(r.x_, x_, MPFR_RNDN);
    return r;
}

BigReal BigReal::exp() const {
    BigReal r(precision_bits());
    mpfr_exp(r.x_, x_, MPFR_RNDN);
    return r;
}

BigReal BigReal::pow_si(long e) const {
    BigReal r(precision_bits());
    mpfr_pow_si(r.x_, x_, e, MPFR_RNDN);
    return r;
}

BigReal BigReal::mul_2si(long e) const {
    BigReal r(precision_bits());
    mpfr_mul_2si(r.x_, x_, e, MPFR_RNDN);
    return r;
}

BigReal BigReal::div_ui(unsigned long d) const {
    BigReal r(precision_bits());
    mpfr_div_ui(r.x_, x_, d, MPFR_RNDN);
    return r;
}

BigReal BigReal::add_up(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b));
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}

BigReal BigReal::mul_up(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b));
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}

BigReal BigReal::div_up(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b));
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}

int BigReal::cmp(const BigReal& b) const { return mpfr_cmp(x_, b.x_); }

bool BigReal::is_zero() const { return mpfr_zero_p(x_) != 0; }

int BigReal::sign() const { return mpfr_sgn(x_); }

double BigReal::to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(x_, rnd); }

std::string BigReal::to_fixed(int significant_digits) const {
    assert(significant_digits >= 1);
    if (is_zero()) {
        std::string s = "0.";
        s.append(static_cast<size_t>(significant_digits), '0');
        return s;
    }
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(significant_digits),
                             x_, MPFR_RNDN);
    if (!raw) throw std::runtime_error("BigReal: mpfr_get_str failed");
    std::string digits(raw);
    mpfr_free_str(raw);

    std::string sign;
    if (!digits.empty() && digits[0] == '-') {
        sign = "-";
        digits.erase(digits.begin());
    }
    // value = 0.d1 d2 ... * 10^e
    std::string out = sign;
    if (e <= 0) {
        out += "0.";
        out.append(static_cast<size_t>(-e), '0');
        out += digits;
    } else if (static_cast<size_t>(e) < digits.size()) {
        out += digits.substr(0, static_cast<size_t>(e));
        out += '.';
        out += digits.substr(static_cast<size_t>(e));
    } else {
        out += digits;
        out.append(static_cast<size_t>(e) - digits.size(), '0');
    }
    return out;
}

std::string BigReal::to_sci(int significant_digits) const {
    assert(significant_digits >= 1);
    if (is_zero()) return "0";
    char* raw = nullptr;
    if (mpfr_asprintf(&raw, "%.*Re", significant_digits - 1, x_) < 0)
        throw std::runtime_error("BigReal: mpfr_asprintf failed");
    std::string s(raw);
    mpfr_free_str(raw);
    return s;
}

} // namespace expdensity
