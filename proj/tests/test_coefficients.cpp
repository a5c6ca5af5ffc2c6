#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "expdensity/coefficients.hpp"
#include "test_util.hpp"

using namespace expdensity;

namespace {

// All 27 raw points (v_2, v_3, v_4) in {-1,0,1}^3, as VSeq with max index 4.
std::vector<VSeq> v_points() {
    std::vector<VSeq> points;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c)
                points.emplace_back(4, std::vector<int8_t>{static_cast<int8_t>(a),
                                                           static_cast<int8_t>(b),
                                                           static_cast<int8_t>(c)});
    return points;
}

} // namespace

TEST_CASE("f_recursive closed forms for small n") {
    for (const VSeq& v : v_points()) {
        auto f = f_recursive(v, 4);
        CHECK(f[0] == 2 * v.at(2));
        CHECK(f[1] == 3 * v.at(3));
        CHECK(f[2] == 4 * v.at(4) - 2 * v.at(2) * v.at(2));
    }
}

TEST_CASE("f_recursive on presets") {
    auto only1 = ExponentSet::parse("preset:only1").v_seq(40);
    auto f = f_recursive(only1, 40);
    for (int n = 2; n <= 40; ++n) {
        if (n % 2 == 0)
            CHECK(f[static_cast<size_t>(n - 2)] == -2);
        else
            CHECK(f[static_cast<size_t>(n - 2)] == 0);
    }

    auto pow2 = ExponentSet::parse("preset:pow2").v_seq(6);
    auto fp = f_recursive(pow2, 6);
    CHECK(fp == std::vector<mpz_class>{0, -3, 4, -5, -3});

    auto sq = ExponentSet::parse("preset:squarefree").v_seq(4);
    CHECK(f_recursive(sq, 4)[2] == -4);
}

TEST_CASE("partition enumeration: counts, order, membership") {
    auto p64 = enumerate_partitions_min2(6, 4);
    REQUIRE(p64.size() == 3);
    CHECK(p64[0].b == std::vector<uint32_t>{0, 2, 0}); // 3+3
    CHECK(p64[1].b == std::vector<uint32_t>{1, 0, 1}); // 2+4
    CHECK(p64[2].b == std::vector<uint32_t>{3, 0, 0}); // 2+2+2

    CHECK(enumerate_partitions_min2(6, 6).size() == 4); // adds the single part 6
    auto p22 = enumerate_partitions_min2(2, 2);
    REQUIRE(p22.size() == 1);
    CHECK(p22[0].b == std::vector<uint32_t>{1});

    for (int n = 2; n <= 18; ++n) {
        for (int maxp : {2, 3, n / 2 + 1, n}) {
            if (maxp < 2 || maxp > n) continue;
            auto parts = enumerate_partitions_min2(n, maxp);
            CHECK(parts.size() == testutil::count_partitions_min2_dp(n, maxp));
            for (size_t i = 0; i < parts.size(); ++i) {
                uint64_t total = 0;
                for (size_t j = 0; j < parts[i].b.size(); ++j)
                    total += (j + 2) * parts[i].b[j];
                CHECK(total == static_cast<uint64_t>(n));
                if (i > 0) CHECK(parts[i - 1].b < parts[i].b); // ascending lex
            }
        }
    }
}

TEST_CASE("t_coefficient hand-checked values and integrality") {
    PartitionVector single4{4, {0, 0, 1}};
    CHECK(t_coefficient(single4) == 4);
    PartitionVector two_twos{4, {2}};
    CHECK(t_coefficient(two_twos) == -2);
    PartitionVector three_twos{6, {3}};
    CHECK(t_coefficient(three_twos) == 2);
    for (int m = 2; m <= 12; ++m) {
        std::vector<uint32_t> b(static_cast<size_t>(m - 1), 0);
        b.back() = 1;
        CHECK(t_coefficient(PartitionVector{m, b}) == m);
    }
    // integrality is asserted inside t_coefficient; sweep everything small
    for (int n = 2; n <= 22; ++n)
        for (const auto& p : enumerate_partitions_min2(n, n)) (void)t_coefficient(p);

    CHECK_THROWS(t_coefficient(PartitionVector{5, {1}})); // 2 != 5
}

TEST_CASE("f_partition equals f_recursive on presets and masks") {
    auto sets = testutil::preset_corpus();
    for (auto& s : testutil::random_mask_corpus(20, 0xC0FFEE)) sets.push_back(s);
    for (const auto& set : sets) {
        VSeq v = set.v_seq(18);
        auto f = f_recursive(v, 18);
        for (int n = 2; n <= 18; ++n)
            CHECK(f_partition(v, n) == f[static_cast<size_t>(n - 2)]);
    }

    VSeq v_only1 = ExponentSet::parse("preset:only1").v_seq(6);
    CHECK(f_partition(v_only1, 6) == -2);
    VSeq v_pow2 = ExponentSet::parse("preset:pow2").v_seq(5);
    CHECK(f_partition(v_pow2, 5) == -5);
    VSeq v_sq = ExponentSet::parse("preset:squarefree").v_seq(4);
    CHECK(f_partition(v_sq, 4) == -4);
}

TEST_CASE("M printed polynomials at all 27 points") {
    for (const VSeq& v : v_points()) {
        mpq_class v2(v.at(2)), v3(v.at(3)), v4(v.at(4));
        mpq_class m4 = -v2 * v2 / 2;
        mpq_class m5 = -v2 * v3;
        mpq_class m6 = -v2 * v4 - v3 * v3 / 2 + v2 * v2 * v2 / 3;

        auto M = M_recursive(v, 6);
        CHECK(M[0] == 0);
        CHECK(M[1] == 0);
        CHECK(M[2] == m4);
        CHECK(M[3] == m5);
        CHECK(M[4] == m6);

        CHECK(M_explicit(v, 4) == m4);
        CHECK(M_explicit(v, 5) == m5);
        CHECK(M_explicit(v, 6) == m6);
    }
}

TEST_CASE("M evaluated at ones matches the hand expansion") {
    VSeq ones(4, {1, 1, 1});
    CHECK(M_explicit(ones, 6) == mpq_class(-7, 6));
    // every partition of 5 with parts in {2,3} uses a 2
    for (int b = -1; b <= 1; ++b) {
        VSeq v(3, {0, static_cast<int8_t>(b)});
        CHECK(M_explicit(v, 5) == 0);
    }
}

TEST_CASE("M paths agree and f_n = n(v_n + M_n)") {
    auto sets = testutil::preset_corpus();
    for (auto& s : testutil::random_mask_corpus(20, 0xC0FFEE)) sets.push_back(s);
    for (const auto& set : sets) {
        VSeq v = set.v_seq(14);
        CoeffTable table = make_coeff_table(v, 14); // asserts consistency + Cauchy
        for (int n = 4; n <= 14; ++n)
            CHECK(M_explicit(v, n) == table.M_at(n));
        for (int n = 2; n <= 14; ++n) {
            mpq_class expect = n * (mpq_class(v.at(n)) + table.M_at(n));
            CHECK(expect == mpq_class(table.f_at(n)));
        }
    }
}

TEST_CASE("Cauchy bound holds with room on deep preset tables") {
    for (const auto& set : testutil::preset_corpus()) {
        VSeq v = set.v_seq(60);
        auto f = f_recursive(v, 60);
        for (int n = 2; n <= 60; ++n)
            CHECK(abs(f[static_cast<size_t>(n - 2)]) <= cauchy_f_limit(n));
    }
    CHECK(cauchy_f_limit(2) == 5);  // floor(2 ln2 * 4)
    CHECK(cauchy_f_limit(10) == 7097); // floor(10 ln2 * 1024)
}

TEST_CASE("coefficient table JSON schema") {
    VSeq v = ExponentSet::parse("preset:only1").v_seq(5);
    CoeffTable table = make_coeff_table(v, 5);
    auto rows = nlohmann::json::parse(table.to_json());
    REQUIRE(rows.is_array());
    REQUIRE(rows.size() == 4);
    CHECK(rows[0]["n"] == 2);
    CHECK(rows[0]["f"] == "-2");
    CHECK(rows[0]["M"]["num"] == "0");
    CHECK(rows[0]["M"]["den"] == "1");
    CHECK(rows[2]["n"] == 4);
    CHECK(rows[2]["f"] == "-2");
    CHECK(rows[2]["M"]["num"] == "-1");
    CHECK(rows[2]["M"]["den"] == "2");
}
