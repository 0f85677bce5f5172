#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fhs/core.hpp"
#include "fhs/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace fhs;

TEST_CASE("hamming correlation evaluates the cyclic agreement count") {
    FHSequence a({0, 1, 0, 1});
    CHECK(hamming_correlation(a, a, 0) == 4);
    CHECK(hamming_correlation(a, a, 2) == 4);
    CHECK(hamming_correlation(a, a, 1) == 0);
    CHECK(hamming_correlation(FHSequence({1, 2, 3, 1}), FHSequence({2, 1, 3, 2}), 0) == 1);
    CHECK_THROWS_AS(hamming_correlation(a, FHSequence({0, 1}), 0), validation_error);
    CHECK_THROWS_AS(hamming_correlation(a, a, 4), validation_error);
}

TEST_CASE("hamming correlation agrees with the naive oracle on random pairs") {
    SplitMix64 rng(7101);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t v = 2 + rng.bounded(12);
        const unsigned m = 2 + static_cast<unsigned>(rng.bounded(5));
        auto x = test::random_sequence(rng, v, m);
        auto y = test::random_sequence(rng, v, m);
        for (std::size_t tau = 0; tau < v; ++tau)
            CHECK(hamming_correlation(x, y, tau) == test::oracle_hamming(x.values, y.values, tau));
    }
}

TEST_CASE("correlation symmetry: H_{X,Y}(tau) = H_{Y,X}(v - tau mod v)") {
    SplitMix64 rng(88);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t v = 2 + rng.bounded(10);
        const unsigned m = 2 + static_cast<unsigned>(rng.bounded(4));
        auto x = test::random_sequence(rng, v, m);
        auto y = test::random_sequence(rng, v, m);
        for (std::size_t tau = 0; tau < v; ++tau)
            CHECK(hamming_correlation(x, y, tau) == hamming_correlation(y, x, (v - tau) % v));
    }
}

TEST_CASE("shift-sum conservation: sum over tau equals the occurrence product") {
    SplitMix64 rng(1312);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t v = 2 + rng.bounded(10);
        const unsigned m = 2 + static_cast<unsigned>(rng.bounded(5));
        auto x = test::random_sequence(rng, v, m);
        auto y = test::random_sequence(rng, v, m);
        unsigned total = 0;
        for (std::size_t tau = 0; tau < v; ++tau) total += hamming_correlation(x, y, tau);
        unsigned expected = 0;
        for (unsigned c = 0; c < m; ++c) {
            unsigned nx = 0, ny = 0;
            for (Channel cc : x.values) nx += cc == c;
            for (Channel cc : y.values) ny += cc == c;
            expected += nx * ny;
        }
        CHECK(total == expected);
    }
}

TEST_CASE("max autocorrelation") {
    CHECK(max_autocorrelation(FHSequence({0, 1, 0, 1})) == 4);
    CHECK(max_autocorrelation(FHSequence({0, 1, 2, 3})) == 0);
    CHECK(max_autocorrelation(FHSequence({0, 0, 1})) == 1);
    CHECK_THROWS_AS(max_autocorrelation(FHSequence({0})), validation_error);
}

TEST_CASE("max crosscorrelation") {
    // (1,0) is the cyclic shift of (0,1), so tau = 1 aligns fully.
    CHECK(max_crosscorrelation(FHSequence({0, 1}), FHSequence({1, 0})) == 2);
    CHECK(max_crosscorrelation(FHSequence({0, 1}), FHSequence({2, 2})) == 0);
    CHECK(max_crosscorrelation(FHSequence({0, 1, 0, 1}), FHSequence({0, 1, 0, 1})) == 4);
    CHECK(max_crosscorrelation(FHSequence({1, 2, 3}), FHSequence({3, 1, 2})) == 3);
}

TEST_CASE("m-measure") {
    CHECK(m_measure(FHSequence({0, 1, 2, 3}), FHSequence({1, 2, 3, 0})) == 4);
    CHECK(m_measure(FHSequence({0, 1}), FHSequence({1, 0})) == 2); // cross term at tau = 1
    CHECK(m_measure(FHSequence({0, 1, 2}), FHSequence({1, 0, 2})) == 1);
    FHSequence x({0, 2, 1, 1});
    CHECK(m_measure(x, x) == 4); // cross term at tau = 0
}

TEST_CASE("correlation summary of the nine-sequence fixture") {
    const Scheme scheme = test::nine_sequence_scheme();
    auto summary = correlation_summary(scheme);
    // Every sequence has exactly one repeated symbol, so H_a = 1; the scheme
    // contains cyclic shifts of each other (X1 and X2), so H_c = v = 3.
    REQUIRE(summary.autocorrelation_max.has_value());
    CHECK(*summary.autocorrelation_max == 1);
    REQUIRE(summary.crosscorrelation_max.has_value());
    CHECK(*summary.crosscorrelation_max == 3);
    CHECK(summary.overall_max == 3);
    CHECK_FALSE(summary.has_duplicates);

    // Cross-check both maxima against the naive oracle.
    unsigned oracle_ha = 0, oracle_hc = 0;
    for (std::size_t i = 0; i < scheme.k(); ++i) {
        for (std::size_t tau = 1; tau < scheme.v(); ++tau)
            oracle_ha = std::max(
                oracle_ha, test::oracle_hamming(scheme.sequences[i].values, scheme.sequences[i].values, tau));
        for (std::size_t j = i + 1; j < scheme.k(); ++j) {
            for (std::size_t tau = 0; tau < scheme.v(); ++tau)
                oracle_hc = std::max(oracle_hc, test::oracle_hamming(scheme.sequences[i].values,
                                                                     scheme.sequences[j].values, tau));
        }
    }
    CHECK(*summary.autocorrelation_max == oracle_ha);
    CHECK(*summary.crosscorrelation_max == oracle_hc);

    // The witness must reproduce the reported value.
    auto cw = *summary.crosscorrelation_witness;
    CHECK(hamming_correlation(scheme.sequences[cw.first], scheme.sequences[cw.second], cw.tau) == 3);
}

TEST_CASE("correlation summary edge cases") {
    auto constant = test::make_scheme(2, {{0, 0, 0}});
    auto summary = correlation_summary(constant);
    CHECK(*summary.autocorrelation_max == 3);
    CHECK_FALSE(summary.crosscorrelation_max.has_value());
    CHECK(summary.overall_max == 3);

    auto disjoint = test::make_scheme(2, {{0, 0}, {1, 1}});
    summary = correlation_summary(disjoint);
    CHECK(*summary.crosscorrelation_max == 0);
    CHECK(summary.overall_max == 2); // each constant pair self-correlates fully

    auto dup = test::make_scheme(2, {{0, 1}, {0, 1}});
    CHECK(correlation_summary(dup).has_duplicates);

    auto single_slot = test::make_scheme(3, {{0}, {1}, {0}});
    summary = correlation_summary(single_slot);
    CHECK_FALSE(summary.autocorrelation_max.has_value());
    CHECK(*summary.crosscorrelation_max == 1);
    CHECK(summary.overall_max == 1);

    CHECK_THROWS_AS(correlation_summary(test::make_scheme(2, {{0}})), validation_error);
}

TEST_CASE("Lempel-Greenberger bound I") {
    auto report = lempel_greenberger_bound_1(8, 4);
    CHECK(report.raw_value == Rational(8, 7));
    CHECK(report.integer_bound == BigInt(2));
    CHECK(*report.inputs.r == 0);

    report = lempel_greenberger_bound_1(4, 4); // v = m
    CHECK(report.raw_value == Rational(0));
    CHECK(report.integer_bound == BigInt(0));

    report = lempel_greenberger_bound_1(9, 3);
    CHECK(report.raw_value == Rational(9, 4));
    CHECK(report.integer_bound == BigInt(3));

    // v < m: r = v makes the numerator vanish.
    report = lempel_greenberger_bound_1(3, 5);
    CHECK(report.raw_value == Rational(0));
    CHECK(report.integer_bound == BigInt(0));

    compare_bound(report, 0);
    CHECK(*report.is_met_with_equality);
    compare_bound(report, 1);
    CHECK_FALSE(*report.is_met_with_equality);
}

TEST_CASE("Lempel-Greenberger bound II") {
    CHECK(lempel_greenberger_bound_2(2, 3, 1).integer_bound == BigInt(4));
    CHECK(lempel_greenberger_bound_2(3, 2, 2).integer_bound == BigInt(1));
    CHECK(lempel_greenberger_bound_2(5, 3, 1).integer_bound == BigInt(25));
    CHECK_THROWS_AS(lempel_greenberger_bound_2(4, 2, 1), validation_error); // p not prime
    CHECK_THROWS_AS(lempel_greenberger_bound_2(3, 2, 3), validation_error); // i > n
}

TEST_CASE("Peng-Fan bound") {
    auto report = peng_fan_bound(23, 23, 23);
    CHECK(*report.inputs.capital_i == 23);
    CHECK(report.raw_value == Rational(11638, 12144));
    CHECK(report.integer_bound == BigInt(1));

    report = peng_fan_bound(3, 9, 3);
    CHECK(*report.inputs.capital_i == 9);
    CHECK(report.raw_value == Rational(216, 234));
    CHECK(report.integer_bound == BigInt(1));

    report = peng_fan_bound(2, 1, 2);
    CHECK(report.raw_value == Rational(0));
    CHECK(report.integer_bound == BigInt(0));

    CHECK_THROWS_AS(peng_fan_bound(1, 1, 1), validation_error);

    // Exact arithmetic at the largest table scale: v = 79, k = 79^9, m = 79.
    auto huge = peng_fan_bound(79, 119851595982618319ull, 79);
    CHECK(huge.raw_value > Rational(0));
    CHECK(huge.integer_bound >= BigInt(1));
}

TEST_CASE("bound soundness on random inputs") {
    SplitMix64 rng(20260808);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t v = 2 + rng.bounded(24);
        const unsigned m = 2 + static_cast<unsigned>(rng.bounded(6));
        auto x = test::random_sequence(rng, v, m);
        auto bound = lempel_greenberger_bound_1(v, m);
        CHECK(BigInt(max_autocorrelation(x)) >= bound.integer_bound);
    }
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t v = 2 + rng.bounded(10);
        const unsigned m = 2 + static_cast<unsigned>(rng.bounded(4));
        const std::size_t k = 2 + rng.bounded(4);
        auto scheme = test::random_scheme(rng, k, v, m);
        auto summary = correlation_summary(scheme);
        auto bound = peng_fan_bound(v, k, m);
        CHECK(BigInt(summary.overall_max) >= bound.integer_bound);
    }
}

TEST_CASE("slot occupancy of the nine-sequence fixture") {
    const Scheme scheme = test::nine_sequence_scheme();
    auto occ = slot_occupancy(scheme, 0);
    CHECK(occ.multiplicity == std::vector<unsigned>{3, 3, 3});
    CHECK_FALSE(occ.active_multiplicity.has_value());

    std::vector<std::size_t> active{0, 1, 2, 3, 4, 5};
    occ = slot_occupancy(scheme, 0, &active);
    REQUIRE(occ.active_multiplicity.has_value());
    CHECK(*occ.active_multiplicity == std::vector<unsigned>{3, 3, 0});

    auto single = test::make_scheme(4, {{2, 3, 1}});
    occ = slot_occupancy(single, 1);
    CHECK(occ.multiplicity == std::vector<unsigned>{0, 0, 0, 1});

    CHECK_THROWS_AS(slot_occupancy(scheme, 3), validation_error);
    std::vector<std::size_t> bad{0, 0};
    CHECK_THROWS_AS(slot_occupancy(scheme, 0, &bad), validation_error);
}

TEST_CASE("slot occupancy invariants on random schemes") {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t v = 1 + rng.bounded(8);
        const unsigned m = 2 + static_cast<unsigned>(rng.bounded(4));
        const std::size_t k = 1 + rng.bounded(7);
        auto scheme = test::random_scheme(rng, k, v, m);
        const std::size_t t = rng.bounded(v);
        const std::size_t a = 1 + rng.bounded(k);
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < a; ++i) active.push_back(i);
        auto occ = slot_occupancy(scheme, t, &active);
        unsigned total = 0, active_total = 0;
        for (std::size_t c = 0; c < m; ++c) {
            total += occ.multiplicity[c];
            active_total += (*occ.active_multiplicity)[c];
            CHECK((*occ.active_multiplicity)[c] <= occ.multiplicity[c]);
        }
        CHECK(total == k);
        CHECK(active_total == a);
    }
}

TEST_CASE("slot uniformity") {
    auto uniform = check_slot_uniformity(test::nine_sequence_scheme());
    CHECK(std::all_of(uniform.begin(), uniform.end(), [](bool b) { return b; }));

    auto twin = test::make_scheme(2, {{0, 0}, {0, 0}});
    auto result = check_slot_uniformity(twin);
    CHECK(std::none_of(result.begin(), result.end(), [](bool b) { return b; }));
}

TEST_CASE("transition uniformity") {
    auto fixture = check_transition_uniformity(test::nine_sequence_scheme());
    CHECK(fixture.all_uniform_or_vacuous());
    CHECK(fixture.vacuous_count() == 0);

    // Two disjoint constants over m = 2: every occupied entry leads to a
    // single concentrated successor, and m=2 with one row is never uniform.
    auto toy = check_transition_uniformity(test::make_scheme(2, {{0, 0}, {1, 1}}));
    CHECK_FALSE(toy.all_uniform_or_vacuous());
    CHECK(toy.vacuous_count() == 0);

    // A scheme leaving channel 2 unused at slot 0 has vacuous entries.
    auto vac = check_transition_uniformity(test::make_scheme(3, {{0, 0}, {1, 1}}));
    CHECK(vac.vacuous_count() > 0);

    // Constant sequences: deterministic transitions are flagged non-uniform.
    auto constants = check_transition_uniformity(test::make_scheme(2, {{0, 0, 0}, {1, 1, 1}}));
    REQUIRE(constants.first_non_uniform().has_value());
    CHECK_FALSE(constants.all_uniform_or_vacuous());

    CHECK_THROWS_AS(check_transition_uniformity(test::make_scheme(2, {{0}})), validation_error);
}

TEST_CASE("scheme validation") {
    Scheme scheme = test::make_scheme(2, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(scheme.validate(), validation_error); // channel 2 >= m
    scheme = test::make_scheme(2, {{0, 1}, {1}});
    CHECK_THROWS_AS(scheme.validate(), validation_error); // ragged
    Scheme empty;
    CHECK_THROWS_AS(empty.validate(), validation_error);
    FrequencyLibrary lib{1};
    CHECK_THROWS_AS(lib.validate(), validation_error);

    auto dup = test::make_scheme(2, {{0, 1}, {0, 1}, {1, 0}});
    auto pairs = dup.find_duplicate_pairs();
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(23));
    CHECK(is_prime(79));
    CHECK(is_prime(2147483647ull));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));      // Carmichael
    CHECK_FALSE(is_prime(25326001)); // strong pseudoprime to small bases
}
