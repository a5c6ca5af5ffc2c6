#include "expdensity/counting_oracle.hpp"

#include <array>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <new>
#include <stdexcept>

#include <json.hpp>

#include "expdensity/errors.hpp"

namespace expdensity {

std::string CensusReport::to_json() const {
    nlohmann::ordered_json j;
    j["x"] = x;
    j["count"] = count;
    // 18 significant digits: enough to reconstruct count/x exactly for any
    // x within the census budget.
    j["empirical_density"] =
        BigReal::of(empirical_density, 96).to_fixed(18);
    if (reference_h) {
        j["h"] = reference_h->to_fixed(h_render_digits);
        j["deviation"] = deviation->to_sci(3);
        j["pass"] = *pass;
    }
    return j.dump();
}

uint64_t census_budget_limit() {
    constexpr uint64_t kDefault = 100'000'000;
    const char* env = std::getenv("EXPDENSITY_MAX_LIMIT");
    if (!env || !*env) return kDefault;
    uint64_t value = 0;
    const char* end = env;
    while (*end) ++end;
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc{} || ptr != end || value == 0) return kDefault;
    return value;
}

SpfSieve::SpfSieve(uint64_t limit) : limit_(limit) {
    if (limit < 1) throw std::invalid_argument("SpfSieve: limit must be >= 1");
    uint64_t budget = census_budget_limit();
    if (limit > budget)
        throw BudgetError("census limit " + std::to_string(limit) +
                          " exceeds the budget of " + std::to_string(budget) +
                          " (override with EXPDENSITY_MAX_LIMIT)");
    if (limit > 4'000'000'000ULL)
        throw BudgetError("census limit " + std::to_string(limit) +
                          " exceeds the 32-bit sieve range");
    try {
        spf_.assign(limit + 1, 0);
    } catch (const std::bad_alloc&) {
        throw BudgetError("census limit " + std::to_string(limit) +
                          ": sieve allocation failed");
    }
    for (uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        spf_[i] = static_cast<uint32_t>(i);
        for (uint64_t m = i * i; m <= limit; m += i)
            if (spf_[m] == 0) spf_[m] = static_cast<uint32_t>(i);
    }
}

uint64_t SpfSieve::count_members(const ExponentSet& set, uint64_t x) const {
    if (x < 1 || x > limit_)
        throw std::invalid_argument("count_members: x out of sieve range");
    // Exponents of integers <= 4e9 never exceed 31.
    std::array<bool, 64> u_small{};
    for (int e = 1; e < 64; ++e) u_small[static_cast<size_t>(e)] = set.u(static_cast<uint64_t>(e)) == 1;

    uint64_t count = 1; // i = 1, vacuously a member
    for (uint64_t i = 2; i <= x; ++i) {
        uint64_t n = i;
        bool member = true;
        while (n > 1) {
            uint32_t p = spf_[n];
            int e = 1;
            n /= p;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            if (!u_small[static_cast<size_t>(e)]) {
                member = false;
                break;
            }
        }
        count += member;
    }
    return count;
}

CensusReport count_members(const ExponentSet& set, uint64_t x) {
    SpfSieve sieve(x);
    CensusReport report;
    report.x = x;
    report.count = sieve.count_members(set, x);
    report.empirical_density = mpq_class(mpz_class(static_cast<unsigned long>(report.count)),
                                         mpz_class(static_cast<unsigned long>(x)));
    report.empirical_density.canonicalize();
    return report;
}

CensusReport empirical_density_check(const SpfSieve& sieve, const ExponentSet& set,
                                     uint64_t x, const BigReal& h, int h_render_digits) {
    CensusReport report;
    report.x = x;
    report.count = sieve.count_members(set, x);
    report.empirical_density = mpq_class(mpz_class(static_cast<unsigned long>(report.count)),
                                         mpz_class(static_cast<unsigned long>(x)));
    report.empirical_density.canonicalize();
    report.h_render_digits = h_render_digits;
    report.reference_h = h;

    mpfr_prec_t prec = h.precision_bits();
    BigReal dev = (BigReal::of(report.empirical_density, prec) - h).abs();
    double xd = static_cast<double>(x);
    BigReal tol = BigReal::of_double(5.0 * std::log(xd) / std::sqrt(xd), 96);
    report.pass = dev <= tol;
    report.deviation = std::move(dev);
    return report;
}

CensusReport empirical_density_check(const ExponentSet& set, uint64_t x,
                                     const BigReal& h, int h_render_digits) {
    SpfSieve sieve(x);
    return empirical_density_check(sieve, set, x, h, h_render_digits);
}

} // namespace expdensity
