#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fhs/errors.hpp"
#include "fhs/metrics.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace fhs;
using namespace fhs::metrics;

namespace {
const Scheme kFixture = test::nine_sequence_scheme();
}

TEST_CASE("group correlation on the fixture") {
    auto g = group_correlation(kFixture, 0, {1, 3}); // X1 vs {X2, X4}
    CHECK(g.blocked_slots == 2);
    CHECK(g.blocked_slot_indices == std::vector<std::size_t>{0, 1});
    CHECK(g.blockers == std::vector<std::size_t>{0, 1}); // X2 blocks slot 0, X4 slot 1

    FHSequence x({1, 2, 3});
    CHECK(group_correlation(x, {FHSequence({1, 2, 3})}).blocked_slots == 3); // value copy
    CHECK(group_correlation(x, {FHSequence({2, 3, 1})}).blocked_slots == 0);

    CHECK_THROWS_AS(group_correlation(x, {}), validation_error);
    CHECK_THROWS_AS(group_correlation(x, {FHSequence({1, 2})}), validation_error);
    CHECK_THROWS_AS(group_correlation(kFixture, 0, {0, 1}), validation_error); // X in U
}

TEST_CASE("group correlation matches the oracle on random schemes") {
    SplitMix64 rng(424242);
    for (int trial = 0; trial < 300; ++trial) {
        auto scheme = test::random_scheme(rng, 3 + rng.bounded(5), 2 + rng.bounded(6),
                                          2 + static_cast<unsigned>(rng.bounded(4)));
        const std::size_t x = rng.bounded(scheme.k());
        std::vector<std::size_t> u;
        for (std::size_t i = 0; i < scheme.k(); ++i) {
            if (i != x && rng.bounded(2)) u.push_back(i);
        }
        if (u.empty()) u.push_back(x == 0 ? 1 : 0);
        CHECK(group_correlation(scheme, x, u).blocked_slots == test::oracle_group_blocked(scheme, x, u));
    }
}

TEST_CASE("throughput of a sequence against a subset") {
    CHECK(throughput(kFixture, 0, {1, 3}).value == Rational(1, 3));
    FHSequence x({0, 1, 2});
    CHECK(throughput(x, {FHSequence({0, 1, 2})}).value == Rational(0));
    CHECK(throughput(x, {FHSequence({1, 2, 0})}).value == Rational(1));
}

TEST_CASE("average throughput of a sequence") {
    // Hand-evaluated over the 8 singleton subsets: six give 2/3, two give 1.
    auto report = average_throughput_of_sequence(kFixture, 0, 1, ComputeMode::Exact);
    CHECK(report.value == Rational(3, 4));
    CHECK(report.mode == ComputeMode::Exact);
    CHECK_FALSE(report.sample_count.has_value());
    CHECK(report.value == test::oracle_average_throughput_of_sequence(kFixture, 0, 1));

    // w = k - 1: the single subset is everything else.
    auto all = average_throughput_of_sequence(kFixture, 0, 8, ComputeMode::Exact);
    std::vector<std::size_t> everyone{1, 2, 3, 4, 5, 6, 7, 8};
    CHECK(all.value == throughput(kFixture, 0, everyone).value);

    // w = 0: no interference.
    CHECK(average_throughput_of_sequence(kFixture, 0, 0, ComputeMode::Exact).value == Rational(1));

    CHECK_THROWS_AS(average_throughput_of_sequence(kFixture, 0, 9, ComputeMode::Exact),
                    validation_error);
}

TEST_CASE("average throughput of a subset") {
    auto report = average_throughput_of_subset(kFixture, {0, 1, 3});
    CHECK(report.value == Rational(1, 3));
    CHECK(report.value == test::oracle_average_throughput_of_subset(kFixture, {0, 1, 3}));

    auto twins = test::make_scheme(2, {{0, 1}, {0, 1}, {0, 1}});
    CHECK(average_throughput_of_subset(twins, {0, 1, 2}).value == Rational(0));

    auto disjoint = test::make_scheme(3, {{0, 0}, {1, 1}, {2, 2}});
    CHECK(average_throughput_of_subset(disjoint, {0, 1, 2}).value == Rational(1));

    CHECK_THROWS_AS(average_throughput_of_subset(kFixture, {0}), validation_error);
}

TEST_CASE("average throughput of the scheme") {
    auto report = average_throughput_of_scheme(kFixture, 2, ComputeMode::Exact);
    CHECK(report.value == test::oracle_average_throughput_of_scheme(kFixture, 2));

    // k = w + 1 reduces to the single-subset average.
    auto tiny = test::make_scheme(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(average_throughput_of_scheme(tiny, 2, ComputeMode::Exact).value ==
          average_throughput_of_subset(tiny, {0, 1, 2}).value);
}

TEST_CASE("worst-case throughput of a sequence with witness") {
    auto report = worst_case_throughput_of_sequence(kFixture, 0, 2, ComputeMode::Exact);
    CHECK(report.value == Rational(1, 3));
    REQUIRE(report.witness.has_value());
    CHECK(*report.witness->sequence == 0);
    CHECK(report.witness->subset == std::vector<std::size_t>{1, 3}); // {X2, X4}
    CHECK(report.value == test::oracle_worst_throughput_of_sequence(kFixture, 0, 2));

    CHECK(worst_case_throughput_of_sequence(kFixture, 0, 0, ComputeMode::Exact).value == Rational(1));

    auto dup = test::make_scheme(2, {{0, 1, 0}, {0, 1, 0}, {1, 0, 1}});
    CHECK(worst_case_throughput_of_sequence(dup, 0, 1, ComputeMode::Exact).value == Rational(0));
}

TEST_CASE("worst-case throughput of a subset") {
    auto report = worst_case_throughput_of_subset(kFixture, {0, 1, 3});
    CHECK(report.value == Rational(1, 3));
    REQUIRE(report.witness.has_value());

    auto twins = test::make_scheme(2, {{0, 1}, {0, 1}});
    CHECK(worst_case_throughput_of_subset(twins, {0, 1}).value == Rational(0));

    auto disjoint = test::make_scheme(3, {{0, 0}, {1, 1}, {2, 2}});
    CHECK(worst_case_throughput_of_subset(disjoint, {0, 1, 2}).value == Rational(1));
}

TEST_CASE("worst-case throughput of the scheme") {
    auto result = worst_case_throughput_of_scheme(kFixture, 2, ComputeMode::Exact);
    CHECK(result.report.value == Rational(1, 3));
    CHECK(result.report.value == test::oracle_worst_throughput_of_scheme(kFixture, 2));
    REQUIRE(result.report.witness.has_value());
    // The witness reproduces the worst value when re-evaluated directly.
    const auto& wit = *result.report.witness;
    std::vector<std::size_t> others;
    for (std::size_t i : wit.subset) {
        if (i != *wit.sequence) others.push_back(i);
    }
    CHECK(throughput(kFixture, *wit.sequence, others).value == result.report.value);
    CHECK_FALSE(result.distance_lower_bound.has_value()); // no certificate attached

    // With a distance certificate satisfying d w^2 > v (w^2 - 1), the
    // guaranteed bound 1 - 1/w is attached and the exact value honors it.
    Scheme certified = kFixture;
    certified.metadata.distance_certificate = 2; // strength-2 fixture is MDS: d = v - t' + 1 = 2
    auto bounded = worst_case_throughput_of_scheme(certified, 1, ComputeMode::Exact);
    REQUIRE(bounded.distance_lower_bound.has_value());
    CHECK(*bounded.distance_lower_bound == Rational(0));
    CHECK(bounded.report.value > *bounded.distance_lower_bound);
}

TEST_CASE("constant-sequence scheme: distance bound attaches and the exact value honors it") {
    // Degree-0 code: 23 constant sequences, d = 23. The certificate premise
    // holds at w = 5, so the strict bound 1 - 1/5 is attached; the exact
    // worst case is 1 because constants never collide.
    metrics::EnumerationPolicy policy;
    policy.threads = 2;
    Scheme constants;
    constants.library.m = 23;
    for (Channel c = 0; c < 23; ++c)
        constants.sequences.emplace_back(std::vector<Channel>(23, c));
    constants.metadata.distance_certificate = 23;
    auto result = worst_case_throughput_of_scheme(constants, 5, ComputeMode::Exact, policy);
    REQUIRE(result.distance_lower_bound.has_value());
    CHECK(*result.distance_lower_bound == Rational(4, 5));
    CHECK(result.report.value == Rational(1));
    CHECK(result.report.value > *result.distance_lower_bound);
}

TEST_CASE("exact modes refuse over-budget enumerations") {
    SplitMix64 rng(5);
    auto scheme = test::random_scheme(rng, 40, 4, 3);
    EnumerationPolicy policy;
    policy.budget = 1000; // C(40, 6) = 3.8M >> 1000
    CHECK_THROWS_AS(average_throughput_of_scheme(scheme, 5, ComputeMode::Exact, policy), budget_error);
    CHECK_THROWS_AS(worst_case_throughput_of_sequence(scheme, 0, 6, ComputeMode::Exact, policy),
                    budget_error);
    try {
        average_throughput_of_scheme(scheme, 5, ComputeMode::Exact, policy);
        FAIL("expected budget_error");
    } catch (const budget_error& err) {
        CHECK(err.configured_budget == 1000);
        CHECK(err.required_evaluations > 1000);
    }
}

TEST_CASE("jammed throughput") {
    // Victim (0,0,1) facing only the constant jammer on channel 0.
    FHSequence x({0, 0, 1});
    CHECK(jammed_throughput(x, {}, {FHSequence({0, 0, 0})}).value == Rational(1, 3));
    CHECK(jammed_throughput(x, {}, {x}).value == Rational(0)); // lock-on copy
    // Jamming channels the victim never uses changes nothing.
    FHSequence elsewhere({2, 2, 2});
    CHECK(jammed_throughput(kFixture.sequences[0], {kFixture.sequences[1]}, {elsewhere}).value ==
          throughput(kFixture, 0, {1}).value);
    CHECK_THROWS_AS(jammed_throughput(x, {}, {}), validation_error);
}

TEST_CASE("jammed measure family against a brute-force oracle") {
    const std::vector<FHSequence> jam{FHSequence({2, 2, 2})};
    const unsigned w = 1;
    auto family = jammed_measure_family(kFixture, w, jam, ComputeMode::Exact);
    REQUIRE(family.size() == 6);

    auto blocked_with_jam = [&](std::size_t x, const std::vector<std::size_t>& u) {
        unsigned blocked = 0;
        for (std::size_t t = 0; t < kFixture.v(); ++t) {
            bool hit = false;
            for (std::size_t o : u) hit = hit || kFixture.sequences[o].values[t] == kFixture.sequences[x].values[t];
            for (const auto& j : jam) hit = hit || j.values[t] == kFixture.sequences[x].values[t];
            if (hit) ++blocked;
        }
        return blocked;
    };

    // Oracle for each of the six measures.
    Rational avg_x(0);
    unsigned worst_x = 0;
    for (const auto& u : test::oracle_subsets_excluding(kFixture, 0, w)) {
        unsigned b = blocked_with_jam(0, u);
        avg_x += Rational(1) - Rational(b, 3);
        worst_x = std::max(worst_x, b);
    }
    avg_x /= Rational(8);
    CHECK(family[0].value == avg_x);
    CHECK(family[3].value == Rational(1) - Rational(worst_x, 3));

    std::vector<std::size_t> v_set{0, 1};
    Rational avg_v(0);
    unsigned worst_v = 0;
    for (std::size_t x : v_set) {
        std::vector<std::size_t> others;
        for (std::size_t i : v_set) {
            if (i != x) others.push_back(i);
        }
        unsigned b = blocked_with_jam(x, others);
        avg_v += Rational(1) - Rational(b, 3);
        worst_v = std::max(worst_v, b);
    }
    avg_v /= Rational(2);
    CHECK(family[1].value == avg_v);
    CHECK(family[4].value == Rational(1) - Rational(worst_v, 3));

    Rational avg_s(0);
    unsigned worst_s = 0;
    auto all_pairs = test::oracle_all_subsets(kFixture.k(), w + 1);
    for (const auto& pair : all_pairs) {
        for (std::size_t xp = 0; xp < pair.size(); ++xp) {
            std::vector<std::size_t> others;
            for (std::size_t i : pair) {
                if (i != pair[xp]) others.push_back(i);
            }
            unsigned b = blocked_with_jam(pair[xp], others);
            avg_s += Rational(1) - Rational(b, 3);
            worst_s = std::max(worst_s, b);
        }
    }
    avg_s /= Rational(static_cast<std::int64_t>(all_pairs.size() * 2));
    CHECK(family[2].value == avg_s);
    CHECK(family[5].value == Rational(1) - Rational(worst_s, 3));

    for (const auto& report : family) CHECK(report.jammer_present);
    CHECK_THROWS_AS(jammed_measure_family(kFixture, 1, {}, ComputeMode::Exact), validation_error);
}

TEST_CASE("monotonicity and subadditivity of group correlation") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        auto scheme = test::random_scheme(rng, 5 + rng.bounded(3), 3 + rng.bounded(5),
                                          2 + static_cast<unsigned>(rng.bounded(3)));
        const std::size_t x = rng.bounded(scheme.k());
        std::vector<std::size_t> small, large;
        for (std::size_t i = 0; i < scheme.k(); ++i) {
            if (i == x) continue;
            if (rng.bounded(2)) small.push_back(i);
            large.push_back(i);
        }
        if (small.empty()) small.push_back(large.front());
        const unsigned g_small = group_correlation(scheme, x, small).blocked_slots;
        const unsigned g_large = group_correlation(scheme, x, large).blocked_slots;
        CHECK(g_small <= g_large);
        CHECK(throughput(scheme, x, small).value >= throughput(scheme, x, large).value);

        // Subadditivity against an arbitrary jammer set.
        std::vector<FHSequence> jam{test::random_sequence(rng, scheme.v(), scheme.m())};
        unsigned g_joint = 0;
        {
            std::vector<FHSequence> both;
            for (std::size_t i : small) both.push_back(scheme.sequences[i]);
            both.push_back(jam[0]);
            g_joint = group_correlation(scheme.sequences[x], both).blocked_slots;
        }
        const unsigned g_jam = group_correlation(scheme.sequences[x], jam).blocked_slots;
        CHECK(g_joint <= g_small + g_jam);
    }
}

TEST_CASE("worst-case never exceeds average, level by level") {
    SplitMix64 rng(777);
    for (int trial = 0; trial < 60; ++trial) {
        auto scheme = test::random_scheme(rng, 4 + rng.bounded(4), 2 + rng.bounded(5),
                                          2 + static_cast<unsigned>(rng.bounded(3)));
        const unsigned w = 1 + static_cast<unsigned>(rng.bounded(scheme.k() - 1));
        const std::size_t x = rng.bounded(scheme.k());
        CHECK(worst_case_throughput_of_sequence(scheme, x, w, ComputeMode::Exact).value <=
              average_throughput_of_sequence(scheme, x, w, ComputeMode::Exact).value);
        CHECK(worst_case_throughput_of_scheme(scheme, w, ComputeMode::Exact).report.value <=
              average_throughput_of_scheme(scheme, w, ComputeMode::Exact).value);
        std::vector<std::size_t> v_set;
        for (std::size_t i = 0; i <= w; ++i) v_set.push_back(i);
        CHECK(worst_case_throughput_of_subset(scheme, v_set).value <=
              average_throughput_of_subset(scheme, v_set).value);
    }
}

TEST_CASE("Monte Carlo estimates converge to exact values") {
    EnumerationPolicy policy;
    policy.samples = 4000;
    policy.seed = 31337;
    auto exact = average_throughput_of_scheme(kFixture, 2, ComputeMode::Exact);
    auto sampled = average_throughput_of_scheme(kFixture, 2, ComputeMode::MonteCarlo, policy);
    REQUIRE(sampled.sample_count.has_value());
    REQUIRE(sampled.standard_error.has_value());
    const double gap = std::abs(sampled.value.to_double() - exact.value.to_double());
    CHECK(gap <= 3.0 * std::max(*sampled.standard_error, 1e-12));

    auto exact_seq = average_throughput_of_sequence(kFixture, 0, 2, ComputeMode::Exact);
    auto sampled_seq = average_throughput_of_sequence(kFixture, 0, 2, ComputeMode::MonteCarlo, policy);
    const double gap_seq = std::abs(sampled_seq.value.to_double() - exact_seq.value.to_double());
    CHECK(gap_seq <= 3.0 * std::max(*sampled_seq.standard_error, 1e-12));
}

TEST_CASE("Monte Carlo worst-case is an upper estimate with the caveat flag") {
    EnumerationPolicy policy;
    policy.samples = 500;
    policy.seed = 2;
    auto exact = worst_case_throughput_of_scheme(kFixture, 2, ComputeMode::Exact);
    auto sampled = worst_case_throughput_of_scheme(kFixture, 2, ComputeMode::MonteCarlo, policy);
    CHECK(sampled.report.min_estimated_from_above);
    CHECK(sampled.report.value >= exact.report.value);
    CHECK_FALSE(sampled.report.witness.has_value());
}

TEST_CASE("results are independent of the thread count") {
    SplitMix64 rng(808);
    auto scheme = test::random_scheme(rng, 9, 6, 4);
    for (unsigned threads : {1u, 2u, 5u}) {
        EnumerationPolicy policy;
        policy.threads = threads;
        policy.samples = 2000;
        policy.seed = 99;
        auto avg = average_throughput_of_scheme(scheme, 3, ComputeMode::Exact, policy);
        auto worst = worst_case_throughput_of_scheme(scheme, 3, ComputeMode::Exact, policy);
        auto mc = average_throughput_of_scheme(scheme, 3, ComputeMode::MonteCarlo, policy);
        EnumerationPolicy base;
        base.samples = 2000;
        base.seed = 99;
        CHECK(avg.value == average_throughput_of_scheme(scheme, 3, ComputeMode::Exact, base).value);
        auto worst_base = worst_case_throughput_of_scheme(scheme, 3, ComputeMode::Exact, base);
        CHECK(worst.report.value == worst_base.report.value);
        CHECK(worst.report.witness->subset == worst_base.report.witness->subset);
        CHECK(*worst.report.witness->sequence == *worst_base.report.witness->sequence);
        auto mc_base = average_throughput_of_scheme(scheme, 3, ComputeMode::MonteCarlo, base);
        CHECK(mc.value == mc_base.value);
        const double se = *mc.standard_error, se_base = *mc_base.standard_error;
        CHECK(se == se_base); // bit-identical: same integer sums, same formula
    }
}
