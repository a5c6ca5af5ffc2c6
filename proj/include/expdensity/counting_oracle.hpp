#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "expdensity/bigreal.hpp"
#include "expdensity/exponent_set.hpp"

namespace expdensity {

/// Exact census of exponentially S-numbers up to x, optionally compared
/// against an engine-computed density.
struct CensusReport {
    uint64_t x = 0;
    uint64_t count = 0;
    mpq_class empirical_density; // count/x, exact
    std::optional<BigReal> reference_h;
    std::optional<BigReal> deviation; // |count/x - h|
    std::optional<bool> pass;
    int h_render_digits = 20;

    // Growth constant of the count's error-term estimate; carried as a
    // label only, never used as a test gate at desk scale.
    static constexpr double kErrorTermGrowthConstant = 7.443083;

    std::string to_json() const;
};

/// Census budget: EXPDENSITY_MAX_LIMIT when set to a positive integer,
/// otherwise 10^8.
uint64_t census_budget_limit();

/// Smallest-prime-factor sieve over [2, limit]; reusable across sets.
/// Memory is 4*(limit+1) bytes; construction refuses limits beyond the
/// budget with a BudgetError. Immutable after construction.
class SpfSieve {
public:
    explicit SpfSieve(uint64_t limit);

    uint64_t limit() const { return limit_; }
    uint32_t smallest_factor(uint64_t n) const { return spf_[n]; }

    /// Exact count of i <= x whose factorization exponents all lie in S.
    /// i = 1 is always counted. Requires x <= limit().
    uint64_t count_members(const ExponentSet& set, uint64_t x) const;

private:
    uint64_t limit_;
    std::vector<uint32_t> spf_;
};

/// One-shot census (builds a sieve of size x).
CensusReport count_members(const ExponentSet& set, uint64_t x);

/// Census plus pass/fail against the tolerance 5 * x^(-1/2) * ln x.
CensusReport empirical_density_check(const ExponentSet& set, uint64_t x,
                                     const BigReal& h, int h_render_digits = 20);
CensusReport empirical_density_check(const SpfSieve& sieve, const ExponentSet& set,
                                     uint64_t x, const BigReal& h,
                                     int h_render_digits = 20);

} // namespace expdensity
