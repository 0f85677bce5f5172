#include "fhs/table2.hpp"

#include "fhs/constructions.hpp"
#include "fhs/errors.hpp"
#include "fhs/jammer.hpp"
#include "fhs/rng.hpp"

namespace fhs::coverfree {

Table2Row table2_row(unsigned v, std::uint64_t m, unsigned t_prime, unsigned w) {
    if (v < 2 || m < 2 || t_prime < 1 || t_prime > v || w < 1)
        throw validation_error("table2_row: invalid parameters");
    Table2Row row;
    row.v = v;
    row.m = m;
    row.t_prime = t_prime;
    row.w = w;
    row.k = BigInt::pow(BigInt::from_uint64(m), t_prime);
    row.d = v - t_prime + 1;

    const BigInt w2 = BigInt::from_uint64(w) * BigInt::from_uint64(w);
    if (BigInt::from_uint64(row.d) * w2 > BigInt::from_uint64(v) * (w2 - BigInt(1))) {
        row.alpha = Rational(1) - Rational(1, w);
    } else {
        row.diagnostics.push_back("distance premise fails: d w^2 <= v (w^2 - 1)");
    }

    const BigInt resilient = BigInt::pow(BigInt::from_uint64(m - 1), t_prime);
    if (BigInt::from_uint64(w) + BigInt(1) <= resilient) {
        row.gamma_slots = t_prime;
    } else {
        row.diagnostics.push_back("identification premise fails: w + 1 > (m-1)^t'");
    }
    return row;
}

const std::vector<Table2Expected>& table2_fixture() {
    static const std::vector<Table2Expected> rows = {
        {23, 23, 3, 3, "0.6667", 3}, {23, 23, 2, 4, "0.7500", 2}, {23, 23, 1, 5, "0.8000", 1},
        {37, 37, 5, 3, "0.6667", 5}, {37, 37, 3, 4, "0.7500", 3}, {37, 37, 2, 5, "0.8000", 2},
        {59, 59, 7, 3, "0.6667", 7}, {59, 59, 4, 4, "0.7500", 4}, {59, 59, 3, 5, "0.8000", 3},
        {79, 79, 9, 3, "0.6667", 9}, {79, 79, 5, 4, "0.7500", 5}, {79, 79, 4, 5, "0.8000", 4},
    };
    return rows;
}

Table2Report table2_report(std::uint64_t materialize_cap, std::uint64_t spot_trials,
                           std::uint64_t seed, unsigned threads) {
    Table2Report report;
    const auto& fixture = table2_fixture();
    for (std::size_t i = 0; i < fixture.size(); ++i) {
        const auto& expected = fixture[i];
        Table2Row row = table2_row(expected.v, expected.m, expected.t_prime, expected.w);
        if (!row.alpha.has_value()) {
            report.diffs.push_back({i, "alpha", expected.alpha_printed, "(unavailable)"});
        } else {
            const Rational want = Rational::from_string(expected.alpha_printed);
            if (row.alpha->round_decimal(4) != want)
                report.diffs.push_back(
                    {i, "alpha", expected.alpha_printed, row.alpha->to_decimal_string(4)});
        }
        if (!row.gamma_slots.has_value()) {
            report.diffs.push_back({i, "gamma", std::to_string(expected.gamma_slots), "(unavailable)"});
        } else if (*row.gamma_slots != expected.gamma_slots) {
            report.diffs.push_back(
                {i, "gamma", std::to_string(expected.gamma_slots), std::to_string(*row.gamma_slots)});
        }

        if (spot_trials > 0 && row.k <= BigInt::from_uint64(materialize_cap) &&
            row.gamma_slots.has_value()) {
            Scheme scheme = construct::construct_mds_scheme(expected.v, expected.t_prime, expected.m,
                                                            materialize_cap);
            jammer::JammerConfig config;
            config.strategy = jammer::Strategy::MaxProbability;
            config.tie_break = jammer::TieBreak::SeededRandom;
            config.rng_seed = seed;
            // The jammer must not identify an active sequence in fewer than
            // t' slots when w + 1 <= (m-1)^t'.
            auto gamma = jammer::estimate_gamma(scheme, expected.w, config, spot_trials,
                                                derive_seed(seed, i), threads);
            Table2Report::SpotCheck check;
            check.row = i;
            check.trials = spot_trials;
            check.min_identification_slot = gamma.min_identification_slot;
            check.meets_gamma_claim = !gamma.min_identification_slot.has_value() ||
                                      *gamma.min_identification_slot >= expected.t_prime;
            if (!check.meets_gamma_claim)
                report.diffs.push_back({i, "gamma-simulation", ">= " + std::to_string(expected.t_prime),
                                        std::to_string(*gamma.min_identification_slot)});
            report.spot_checks.push_back(check);
        }
        report.rows.push_back(std::move(row));
    }
    report.all_match = report.diffs.empty();
    return report;
}

} // namespace fhs::coverfree
