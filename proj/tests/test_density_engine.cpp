#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "expdensity/coefficients.hpp"
#include "expdensity/density_engine.hpp"
#include "expdensity/errors.hpp"
#include "test_util.hpp"

using namespace expdensity;

TEST_CASE("log factor: closed forms") {
    const mpfr_prec_t prec = 140;
    auto only1 = ExponentSet::parse("preset:only1");
    auto lf = F_S_log_at(only1, 2, prec);
    BigReal expect = BigReal::of(mpq_class(3, 4), prec).log(); // F = 1 - x^2
    CHECK((lf.value - expect).abs() <=
          BigReal::add_up(lf.bound, BigReal::pow2(-static_cast<long>(prec) + 8)));
    // polynomial series evaluated in full: only the rounding allowance remains
    CHECK(lf.bound <= BigReal::pow2(-static_cast<long>(prec) + 12));

    auto all = ExponentSet::parse("preset:all");
    for (uint64_t p : {2ull, 7ull, 97ull}) {
        auto z = F_S_log_at(all, p, prec);
        CHECK(z.value.is_zero());
        CHECK(z.bound <= BigReal::pow2(-static_cast<long>(prec) + 12));
    }
}

TEST_CASE("log factor: pow2 at p=2 against an exact rational partial sum") {
    const mpfr_prec_t prec = 160;
    auto pow2 = ExponentSet::parse("preset:pow2");
    auto lf = F_S_log_at(pow2, 2, prec);

    auto oracle = testutil::f_value_rational(pow2, 2, 200);
    BigReal f_lo = BigReal::of(oracle.value, 300) - oracle.tail_bound;
    BigReal f_hi = BigReal::of(oracle.value, 300) + oracle.tail_bound;
    CHECK(lf.value >= f_lo.log() - lf.bound - BigReal::pow2(-150));
    CHECK(lf.value <= f_hi.log() + lf.bound + BigReal::pow2(-150));

    // first partial sums: 1 - 1/8 + 1/16 - 1/32 + 1/256 - 1/512 + ...
    CHECK(BigReal::of(oracle.value, 300).to_fixed(15) == "0.908210754510947");
}

TEST_CASE("hybrid densities match the 20-digit reference constants") {
    struct Case {
        const char* spec;
        const char* digits;
    };
    for (Case c : {Case{"preset:squarefree", "0.95592301586190237688"},
                   Case{"preset:pow2", "0.87249717935391281355"},
                   Case{"preset:primes1", "0.94671933735527801046"}}) {
        auto r = density_hybrid(ExponentSet::parse(c.spec), {.digits = 20});
        BigReal printed = BigReal::parse(r.h.to_fixed(20), 200);
        BigReal reference = BigReal::parse(c.digits, 200);
        CHECK((printed - reference).abs() <= BigReal::ten_pow(-19, 200));
        CHECK(r.error_bound <= BigReal::ten_pow(-20, 96));
    }
}

TEST_CASE("hybrid analytic anchors") {
    auto r = density_hybrid(ExponentSet::parse("preset:only1"), {.digits = 30});
    mpfr_prec_t prec = digits_to_prec(30);
    BigReal inv_zeta2 = BigReal::of_ulong(1, prec + 40) / zeta(2, prec);
    CHECK((r.h - inv_zeta2).abs() <= BigReal::ten_pow(-28, 96));

    auto one = density_hybrid(ExponentSet::parse("preset:all"), {.digits = 20});
    CHECK(mpfr_cmp_ui(one.h.raw(), 1) == 0);
    CHECK(one.error_bound.is_zero());
    CHECK(one.h.to_fixed(5) == "1.0000");

    // mask:11111 leaves v_7 = -1 as the only nonzero term, so F = 1 - x^7
    // and h = 1/zeta(7).
    auto mask = density_hybrid(ExponentSet::parse("mask:11111"), {.digits = 30});
    mpfr_prec_t mp = digits_to_prec(30);
    BigReal z7 = BigReal::of_ulong(1, mp + 40) / zeta(7, mp);
    CHECK((mask.h - z7).abs() <= mask.error_bound);

    // deep-digit anchor: 100 digits of only1 against 1/zeta(2)
    auto deep = density_hybrid(ExponentSet::parse("preset:only1"), {.digits = 100});
    mpfr_prec_t dp = digits_to_prec(100);
    BigReal z2 = BigReal::of_ulong(1, dp + 40) / zeta(2, dp);
    CHECK((deep.h - z2).abs() <= BigReal::ten_pow(-100, 96));
}

TEST_CASE("series grouping via M equals the f_n/n grouping (full prime zeta)") {
    // Both groupings of the same truncated series must agree to rounding:
    // term by term, f_n/n = v_n + M_n. Also sanity-check exp(series) against
    // the production hybrid value; the actual coefficients decay fast enough
    // at N = 40 that 1e-9 has orders of magnitude to spare.
    const int N = 40;
    const mpfr_prec_t prec = digits_to_prec(10);
    for (const auto& set : testutil::preset_corpus()) {
        VSeq v = set.v_seq(N);
        CoeffTable table = make_coeff_table(v, N);

        BigReal route_f(prec + 32);
        for (int n = 2; n <= N; ++n) {
            if (table.f_at(n) == 0) continue;
            mpq_class ratio(table.f_at(n), n);
            ratio.canonicalize();
            route_f += BigReal::of(ratio, prec) * prime_zeta(static_cast<unsigned>(n), prec);
        }

        BigReal route_m(prec + 32);
        for (int n = 2; n <= N; ++n) {
            mpq_class coeff = mpq_class(v.at(n)) + table.M_at(n);
            if (coeff == 0) continue;
            route_m += BigReal::of(coeff, prec) * prime_zeta(static_cast<unsigned>(n), prec);
        }

        CHECK((route_f - route_m).abs() <= BigReal::pow2(-static_cast<long>(prec) + 16));

        auto hybrid = density_hybrid(set, {.digits = 10});
        CHECK((route_f.exp() - hybrid.h).abs() <= BigReal::parse("1e-7", 96));
    }
}

TEST_CASE("hybrid vs euler-truncated within combined bounds") {
    auto sets = testutil::preset_corpus();
    for (auto& s : testutil::random_mask_corpus(50, 0xC0FFEE)) sets.push_back(s);
    for (const auto& set : sets) {
        auto hy = density_hybrid(set, {.digits = 20});
        auto eu = density_euler_truncated(set, 1'000'000, 20);
        CHECK((hy.h - eu.h).abs() <= BigReal::add_up(hy.error_bound, eu.error_bound));
        CHECK(eu.error_bound <= BigReal::parse("1.54e-6", 96));
        CHECK(eu.series_terms_N == 0);
    }
}

TEST_CASE("euler-truncated anchors") {
    auto only1 = density_euler_truncated(ExponentSet::parse("preset:only1"), 1'000'000, 20);
    mpfr_prec_t prec = digits_to_prec(20);
    BigReal pi = BigReal::pi(prec);
    BigReal ref = BigReal::of_ulong(6, prec) / (pi * pi);
    CHECK((only1.h - ref).abs() <= BigReal::parse("1.54e-6", 96));

    auto one = density_euler_truncated(ExponentSet::parse("preset:all"), 1000, 20);
    CHECK(mpfr_cmp_ui(one.h.raw(), 1) == 0);
    CHECK(one.error_bound.is_zero());
}

TEST_CASE("monotone refinement: more digits or a larger cutoff stay inside the bound") {
    for (const char* spec : {"preset:squarefree", "preset:pow2", "preset:primes1",
                             "preset:only1", "mask:0101"}) {
        auto set = ExponentSet::parse(spec);
        auto base = density_hybrid(set, {.digits = 20});
        auto deeper = density_hybrid(set, {.digits = 30});
        CHECK((base.h - deeper.h.round_to(base.h.precision_bits())).abs() <= base.error_bound);
        auto wider = density_hybrid(set, {.digits = 20, .prime_cutoff = 211});
        CHECK((base.h - wider.h).abs() <= base.error_bound);
        auto longer = density_hybrid(set, {.digits = 20, .terms = base.series_terms_N + 10});
        CHECK((base.h - longer.h).abs() <= base.error_bound);
    }
}

TEST_CASE("range invariant over presets and masks") {
    BigReal pi = BigReal::pi(200);
    BigReal lower = BigReal::of_ulong(6, 200) / (pi * pi);
    auto sets = testutil::preset_corpus();
    for (auto& s : testutil::random_mask_corpus(25, 0xBEEF)) sets.push_back(s);
    for (const auto& set : sets) {
        auto r = density_hybrid(set, {.digits = 12});
        CHECK(r.h >= lower - r.error_bound - BigReal::pow2(-40));
        CHECK(r.h <= BigReal::of_ulong(1, 96) + r.error_bound + BigReal::pow2(-40));
    }
}

TEST_CASE("determinism: identical inputs give identical decimal output") {
    auto set = ExponentSet::parse("preset:primes1");
    auto a = density_hybrid(set, {.digits = 25});
    auto b = density_hybrid(set, {.digits = 25});
    CHECK(a.h.to_fixed(25) == b.h.to_fixed(25));
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("density result JSON schema") {
    auto r = density_hybrid(ExponentSet::parse("preset:pow2"), {.digits = 20});
    auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["method"] == "hybrid");
    CHECK(j["set"] == "preset:pow2");
    CHECK(j["digits"] == 20);
    CHECK(j["B"] == 101);
    CHECK(j["N"] >= 10);
    std::string h = j["h"].get<std::string>();
    CHECK(BigReal::parse(h, 120).to_fixed(20) == h); // numeric strings round-trip
    CHECK(j["error_bound"].get<std::string>().find("e-") != std::string::npos);
    std::string lh = j["log_h"].get<std::string>();
    CHECK((BigReal::parse(lh, 200).exp() - BigReal::parse(h, 200)).abs() <=
          BigReal::ten_pow(-19, 96));
}

TEST_CASE("digit and parameter validation") {
    auto set = ExponentSet::parse("preset:only1");
    CHECK_THROWS_AS(density_hybrid(set, {.digits = 0}), SpecError);
    CHECK_THROWS_AS(density_hybrid(set, {.digits = kMaxDigits + 1}), SpecError);
    CHECK_THROWS(density_euler_truncated(set, 1, 20));
    CHECK(resolve_prime_cutoff(2) == 5);
    CHECK(resolve_prime_cutoff(100) == 101);
    CHECK(resolve_prime_cutoff(101) == 101);
}
