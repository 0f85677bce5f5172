#include "fhs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "fhs/combinatorics.hpp"
#include "fhs/errors.hpp"
#include "fhs/parallel.hpp"
#include "fhs/rng.hpp"

namespace fhs::metrics {

namespace {

void validate_indices(const Scheme& scheme, const std::vector<std::size_t>& indices, const char* what) {
    std::vector<bool> seen(scheme.k(), false);
    for (std::size_t i : indices) {
        if (i >= scheme.k()) throw validation_error(std::string(what) + ": sequence index out of range");
        if (seen[i]) throw validation_error(std::string(what) + ": duplicate sequence index");
        seen[i] = true;
    }
}

void validate_jammers(const Scheme& scheme, const std::vector<FHSequence>& jammers) {
    for (const auto& j : jammers) {
        if (j.length() != scheme.v())
            throw validation_error("jammed measure: jammer sequence length mismatch");
        for (Channel c : j.values) {
            if (c >= scheme.m()) throw validation_error("jammed measure: jammer channel >= m");
        }
    }
}

// Slots of x blocked by any member of u (scheme indices) or any jammer.
unsigned blocked_count(const Scheme& scheme, std::size_t x_index, const std::size_t* u,
                       std::size_t u_len, const std::vector<FHSequence>* jammers) {
    const auto& x = scheme.sequences[x_index];
    const std::size_t v = scheme.v();
    unsigned blocked = 0;
    for (std::size_t t = 0; t < v; ++t) {
        const Channel c = x.values[t];
        bool hit = false;
        for (std::size_t i = 0; i < u_len && !hit; ++i) hit = scheme.sequences[u[i]].values[t] == c;
        if (!hit && jammers != nullptr) {
            for (const auto& j : *jammers) {
                if (j.values[t] == c) {
                    hit = true;
                    break;
                }
            }
        }
        if (hit) ++blocked;
    }
    return blocked;
}

std::uint64_t require_within_budget(std::size_t n, std::size_t r, const EnumerationPolicy& policy,
                                    const char* what) {
    const std::uint64_t count = binomial_capped(n, r, policy.budget);
    if (count > policy.budget)
        throw budget_error(std::string(what) + ": exact enumeration needs more than " +
                               std::to_string(policy.budget) +
                               " subset evaluations; raise the budget or use Monte Carlo mode",
                           count, policy.budget);
    return count;
}

// Maps combination positions over {0..k-2} to scheme indices skipping x.
inline std::size_t skip_index(std::size_t pos, std::size_t x_index) {
    return pos < x_index ? pos : pos + 1;
}

struct ExtremeAccum {
    bool any = false;
    unsigned blocked = 0;
    std::uint64_t rank = 0;
    std::size_t x_pos = 0; // position of X within V for scheme-level scans
    std::vector<std::size_t> subset;

    // Larger blocked count wins; ties resolve toward the earlier witness, so
    // the result is independent of how the scan was partitioned.
    void offer(unsigned b, std::uint64_t r, std::size_t xp, const std::vector<std::size_t>& s) {
        if (!any || b > blocked || (b == blocked && (r < rank || (r == rank && xp < x_pos)))) {
            any = true;
            blocked = b;
            rank = r;
            x_pos = xp;
            subset = s;
        }
    }
    void merge(const ExtremeAccum& other) {
        if (other.any) offer(other.blocked, other.rank, other.x_pos, other.subset);
    }
};

// Exhaustive walk over w-subsets of S \ {x_index}.
void scan_sequence_subsets(const Scheme& scheme, std::size_t x_index, unsigned w,
                           const std::vector<FHSequence>* jammers, const EnumerationPolicy& policy,
                           std::uint64_t count, std::uint64_t* out_sum, ExtremeAccum* out_extreme) {
    const std::size_t pool = scheme.k() - 1;
    const unsigned workers = policy.threads ? policy.threads : 1;
    std::vector<std::uint64_t> sums(workers, 0);
    std::vector<ExtremeAccum> extremes(workers);
    parallel_chunks(count, workers, [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        CombinationCursor cursor(pool, w, begin);
        std::vector<std::size_t> real(w);
        for (std::uint64_t rank = begin; rank < end; ++rank) {
            const auto& pos = cursor.indices();
            for (unsigned i = 0; i < w; ++i) real[i] = skip_index(pos[i], x_index);
            const unsigned b = blocked_count(scheme, x_index, real.data(), w, jammers);
            if (out_sum != nullptr) sums[worker] += b;
            if (out_extreme != nullptr) extremes[worker].offer(b, rank, 0, real);
            if (rank + 1 < end) cursor.advance();
        }
    });
    if (out_sum != nullptr) {
        *out_sum = 0;
        for (std::uint64_t s : sums) *out_sum += s;
    }
    if (out_extreme != nullptr) {
        for (const auto& e : extremes) out_extreme->merge(e);
    }
}

// Exhaustive walk over (w+1)-subsets V of S, evaluating every X in V.
void scan_scheme_subsets(const Scheme& scheme, unsigned w, const std::vector<FHSequence>* jammers,
                         const EnumerationPolicy& policy, std::uint64_t count, std::uint64_t* out_sum,
                         ExtremeAccum* out_extreme) {
    const unsigned r = w + 1;
    const unsigned workers = policy.threads ? policy.threads : 1;
    std::vector<std::uint64_t> sums(workers, 0);
    std::vector<ExtremeAccum> extremes(workers);
    parallel_chunks(count, workers, [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        CombinationCursor cursor(scheme.k(), r, begin);
        std::vector<std::size_t> others(w);
        for (std::uint64_t rank = begin; rank < end; ++rank) {
            const auto& v_indices = cursor.indices();
            for (unsigned xp = 0; xp < r; ++xp) {
                for (unsigned i = 0, o = 0; i < r; ++i) {
                    if (i != xp) others[o++] = v_indices[i];
                }
                const unsigned b = blocked_count(scheme, v_indices[xp], others.data(), w, jammers);
                if (out_sum != nullptr) sums[worker] += b;
                if (out_extreme != nullptr) extremes[worker].offer(b, rank, xp, v_indices);
            }
            if (rank + 1 < end) cursor.advance();
        }
    });
    if (out_sum != nullptr) {
        *out_sum = 0;
        for (std::uint64_t s : sums) *out_sum += s;
    }
    if (out_extreme != nullptr) {
        for (const auto& e : extremes) out_extreme->merge(e);
    }
}

struct McStats {
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
    unsigned max_blocked = 0;
};

// Per-sample blocked counts lie in [0, value_scale]; the sample value is
// 1 - blocked/value_scale.
void finish_mc_average(ThroughputReport& report, const McStats& stats, std::uint64_t n,
                       std::uint64_t value_scale) {
    report.mode = ComputeMode::MonteCarlo;
    report.sample_count = n;
    report.value = Rational(1) - Rational(BigInt::from_uint64(stats.sum),
                                          BigInt::from_uint64(n) * BigInt::from_uint64(value_scale));
    const double mean = static_cast<double>(stats.sum) / static_cast<double>(n);
    double var = 0.0;
    if (n > 1) {
        var = (static_cast<double>(stats.sum_sq) - mean * static_cast<double>(stats.sum)) /
              static_cast<double>(n - 1);
        if (var < 0) var = 0; // guard rounding
    }
    report.standard_error = std::sqrt(var / static_cast<double>(n)) / static_cast<double>(value_scale);
}

McStats run_mc(std::uint64_t samples, unsigned threads, std::uint64_t master_seed,
               const std::function<unsigned(SplitMix64&)>& one_sample) {
    const unsigned workers = threads ? threads : 1;
    std::vector<McStats> partial(workers);
    parallel_chunks(samples, workers, [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            SplitMix64 rng(derive_seed(master_seed, i));
            const unsigned b = one_sample(rng);
            partial[worker].sum += b;
            partial[worker].sum_sq += static_cast<std::uint64_t>(b) * b;
            partial[worker].max_blocked = std::max(partial[worker].max_blocked, b);
        }
    });
    McStats out;
    for (const auto& p : partial) {
        out.sum += p.sum;
        out.sum_sq += p.sum_sq;
        out.max_blocked = std::max(out.max_blocked, p.max_blocked);
    }
    return out;
}

Rational one_minus(unsigned blocked, std::uint64_t scale) {
    return Rational(1) - Rational(static_cast<std::int64_t>(blocked), static_cast<std::int64_t>(scale));
}

ThroughputReport sequence_level(const Scheme& scheme, std::size_t x_index, unsigned w,
                                ComputeMode mode, const EnumerationPolicy& policy,
                                const std::vector<FHSequence>* jammers, bool worst) {
    scheme.validate();
    if (x_index >= scheme.k()) throw validation_error("throughput measure: X index out of range");
    if (w > scheme.k() - 1) throw validation_error("throughput measure: w exceeds k - 1");
    if (jammers != nullptr) validate_jammers(scheme, *jammers);

    ThroughputReport out;
    out.measure = worst ? MeasureKind::WorstOfSequence : MeasureKind::AverageOfSequence;
    out.jammer_present = jammers != nullptr;
    out.w = w;
    const std::size_t v = scheme.v();

    if (mode == ComputeMode::Exact) {
        const std::uint64_t count =
            require_within_budget(scheme.k() - 1, w, policy, "throughput of sequence");
        if (worst) {
            ExtremeAccum extreme;
            scan_sequence_subsets(scheme, x_index, w, jammers, policy, count, nullptr, &extreme);
            out.value = one_minus(extreme.blocked, v);
            out.witness = MeasureWitness{x_index, extreme.subset};
        } else {
            std::uint64_t sum = 0;
            scan_sequence_subsets(scheme, x_index, w, jammers, policy, count, &sum, nullptr);
            out.value = Rational(1) - Rational(BigInt::from_uint64(sum),
                                               BigInt::from_uint64(count) * BigInt::from_uint64(v));
        }
        return out;
    }

    const std::size_t pool = scheme.k() - 1;
    auto one_sample = [&](SplitMix64& rng) {
        auto pos = sample_combination(rng, pool, w);
        std::vector<std::size_t> real(w);
        for (unsigned i = 0; i < w; ++i) real[i] = skip_index(pos[i], x_index);
        return blocked_count(scheme, x_index, real.data(), w, jammers);
    };
    McStats stats = run_mc(policy.samples, policy.threads, policy.seed, one_sample);
    if (worst) {
        out.mode = ComputeMode::MonteCarlo;
        out.sample_count = policy.samples;
        out.value = one_minus(stats.max_blocked, v);
        out.min_estimated_from_above = true;
    } else {
        finish_mc_average(out, stats, policy.samples, v);
    }
    return out;
}

ThroughputReport subset_level(const Scheme& scheme, const std::vector<std::size_t>& v_indices,
                              const std::vector<FHSequence>* jammers, bool worst) {
    scheme.validate();
    if (v_indices.size() < 2) throw validation_error("throughput of subset: |V| must be at least 2");
    validate_indices(scheme, v_indices, "throughput of subset");
    if (jammers != nullptr) validate_jammers(scheme, *jammers);

    const unsigned w = static_cast<unsigned>(v_indices.size() - 1);
    const std::size_t v = scheme.v();
    std::vector<std::size_t> others(w);
    std::uint64_t sum = 0;
    unsigned max_blocked = 0;
    std::size_t argmax = v_indices[0];
    for (std::size_t xp = 0; xp < v_indices.size(); ++xp) {
        for (std::size_t i = 0, o = 0; i < v_indices.size(); ++i) {
            if (i != xp) others[o++] = v_indices[i];
        }
        const unsigned b = blocked_count(scheme, v_indices[xp], others.data(), w, jammers);
        sum += b;
        if (b > max_blocked) {
            max_blocked = b;
            argmax = v_indices[xp];
        }
    }

    ThroughputReport out;
    out.measure = worst ? MeasureKind::WorstOfSubset : MeasureKind::AverageOfSubset;
    out.jammer_present = jammers != nullptr;
    out.w = w;
    if (worst) {
        out.value = one_minus(max_blocked, v);
        out.witness = MeasureWitness{argmax, v_indices};
    } else {
        out.value = Rational(1) - Rational(BigInt::from_uint64(sum),
                                           BigInt::from_uint64(v_indices.size()) * BigInt::from_uint64(v));
    }
    return out;
}

ThroughputReport scheme_level(const Scheme& scheme, unsigned w, ComputeMode mode,
                              const EnumerationPolicy& policy, const std::vector<FHSequence>* jammers,
                              bool worst) {
    scheme.validate();
    if (static_cast<std::size_t>(w) + 1 > scheme.k())
        throw validation_error("throughput of scheme: w + 1 exceeds k");
    if (jammers != nullptr) validate_jammers(scheme, *jammers);

    ThroughputReport out;
    out.measure = worst ? MeasureKind::WorstOfScheme : MeasureKind::AverageOfScheme;
    out.jammer_present = jammers != nullptr;
    out.w = w;
    const std::size_t v = scheme.v();
    const unsigned r = w + 1;

    if (mode == ComputeMode::Exact) {
        const std::uint64_t count = require_within_budget(scheme.k(), r, policy, "throughput of scheme");
        if (worst) {
            ExtremeAccum extreme;
            scan_scheme_subsets(scheme, w, jammers, policy, count, nullptr, &extreme);
            out.value = one_minus(extreme.blocked, v);
            out.witness = MeasureWitness{extreme.subset[extreme.x_pos], extreme.subset};
        } else {
            std::uint64_t sum = 0;
            scan_scheme_subsets(scheme, w, jammers, policy, count, &sum, nullptr);
            out.value = Rational(1) - Rational(BigInt::from_uint64(sum),
                                               BigInt::from_uint64(count) * BigInt::from_uint64(r) *
                                                   BigInt::from_uint64(v));
        }
        return out;
    }

    auto subset_blocked = [&](const std::vector<std::size_t>& v_indices, unsigned* out_max) {
        std::vector<std::size_t> others(w);
        unsigned total = 0, maxb = 0;
        for (std::size_t xp = 0; xp < v_indices.size(); ++xp) {
            for (std::size_t i = 0, o = 0; i < v_indices.size(); ++i) {
                if (i != xp) others[o++] = v_indices[i];
            }
            unsigned b = blocked_count(scheme, v_indices[xp], others.data(), w, jammers);
            total += b;
            maxb = std::max(maxb, b);
        }
        if (out_max != nullptr) *out_max = maxb;
        return total;
    };

    if (worst) {
        auto one_sample = [&](SplitMix64& rng) {
            auto v_indices = sample_combination(rng, scheme.k(), r);
            unsigned maxb = 0;
            subset_blocked(v_indices, &maxb);
            return maxb;
        };
        McStats stats = run_mc(policy.samples, policy.threads, policy.seed, one_sample);
        out.mode = ComputeMode::MonteCarlo;
        out.sample_count = policy.samples;
        out.value = one_minus(stats.max_blocked, v);
        out.min_estimated_from_above = true;
    } else {
        auto one_sample = [&](SplitMix64& rng) {
            auto v_indices = sample_combination(rng, scheme.k(), r);
            return subset_blocked(v_indices, nullptr);
        };
        McStats stats = run_mc(policy.samples, policy.threads, policy.seed, one_sample);
        finish_mc_average(out, stats, policy.samples, static_cast<std::uint64_t>(r) * v);
    }
    return out;
}

} // namespace

GroupCorrelationResult group_correlation(const FHSequence& x, const std::vector<FHSequence>& u) {
    if (u.empty()) throw validation_error("group_correlation: U must be nonempty");
    const std::size_t v = x.length();
    if (v == 0) throw validation_error("group_correlation: empty sequence");
    for (const auto& y : u) {
        if (y.length() != v) throw validation_error("group_correlation: length mismatch");
    }
    GroupCorrelationResult out;
    for (std::size_t t = 0; t < v; ++t) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i].values[t] == x.values[t]) {
                out.blocked_slot_indices.push_back(t);
                out.blockers.push_back(i);
                break;
            }
        }
    }
    out.blocked_slots = static_cast<unsigned>(out.blocked_slot_indices.size());
    return out;
}

GroupCorrelationResult group_correlation(const Scheme& scheme, std::size_t x_index,
                                         const std::vector<std::size_t>& u_indices) {
    scheme.validate();
    if (x_index >= scheme.k()) throw validation_error("group_correlation: X index out of range");
    validate_indices(scheme, u_indices, "group_correlation");
    if (std::find(u_indices.begin(), u_indices.end(), x_index) != u_indices.end())
        throw validation_error("group_correlation: X must not be a member of U");
    std::vector<FHSequence> u;
    u.reserve(u_indices.size());
    for (std::size_t i : u_indices) u.push_back(scheme.sequences[i]);
    return group_correlation(scheme.sequences[x_index], u);
}

ThroughputReport throughput(const FHSequence& x, const std::vector<FHSequence>& u) {
    auto g = group_correlation(x, u);
    ThroughputReport out;
    out.measure = MeasureKind::Throughput;
    out.w = static_cast<unsigned>(u.size());
    out.value = one_minus(g.blocked_slots, x.length());
    return out;
}

ThroughputReport throughput(const Scheme& scheme, std::size_t x_index,
                            const std::vector<std::size_t>& u_indices) {
    auto g = group_correlation(scheme, x_index, u_indices);
    ThroughputReport out;
    out.measure = MeasureKind::Throughput;
    out.w = static_cast<unsigned>(u_indices.size());
    out.value = one_minus(g.blocked_slots, scheme.v());
    return out;
}

ThroughputReport average_throughput_of_sequence(const Scheme& scheme, std::size_t x_index, unsigned w,
                                                ComputeMode mode, const EnumerationPolicy& policy) {
    return sequence_level(scheme, x_index, w, mode, policy, nullptr, false);
}

ThroughputReport average_throughput_of_subset(const Scheme& scheme,
                                              const std::vector<std::size_t>& v_indices) {
    return subset_level(scheme, v_indices, nullptr, false);
}

ThroughputReport average_throughput_of_scheme(const Scheme& scheme, unsigned w, ComputeMode mode,
                                              const EnumerationPolicy& policy) {
    return scheme_level(scheme, w, mode, policy, nullptr, false);
}

ThroughputReport worst_case_throughput_of_sequence(const Scheme& scheme, std::size_t x_index,
                                                   unsigned w, ComputeMode mode,
                                                   const EnumerationPolicy& policy) {
    return sequence_level(scheme, x_index, w, mode, policy, nullptr, true);
}

ThroughputReport worst_case_throughput_of_subset(const Scheme& scheme,
                                                 const std::vector<std::size_t>& v_indices) {
    return subset_level(scheme, v_indices, nullptr, true);
}

WorstCaseSchemeReport worst_case_throughput_of_scheme(const Scheme& scheme, unsigned w,
                                                      ComputeMode mode,
                                                      const EnumerationPolicy& policy) {
    WorstCaseSchemeReport out;
    out.report = scheme_level(scheme, w, mode, policy, nullptr, true);
    if (scheme.metadata.distance_certificate.has_value() && w >= 1) {
        const std::uint64_t d = *scheme.metadata.distance_certificate;
        const std::uint64_t w2 = static_cast<std::uint64_t>(w) * w;
        if (d * w2 > scheme.v() * (w2 - 1))
            out.distance_lower_bound = Rational(1) - Rational(1, static_cast<std::int64_t>(w));
    }
    return out;
}

ThroughputReport jammed_throughput(const FHSequence& x, const std::vector<FHSequence>& u,
                                   const std::vector<FHSequence>& jammers) {
    if (jammers.empty()) throw validation_error("jammed_throughput: J must be nonempty");
    const std::size_t v = x.length();
    if (v == 0) throw validation_error("jammed_throughput: empty sequence");
    for (const auto& y : u) {
        if (y.length() != v) throw validation_error("jammed_throughput: length mismatch in U");
    }
    for (const auto& j : jammers) {
        if (j.length() != v) throw validation_error("jammed_throughput: length mismatch in J");
    }
    unsigned blocked = 0;
    for (std::size_t t = 0; t < v; ++t) {
        bool hit = false;
        for (const auto& y : u) {
            if (y.values[t] == x.values[t]) {
                hit = true;
                break;
            }
        }
        if (!hit) {
            for (const auto& j : jammers) {
                if (j.values[t] == x.values[t]) {
                    hit = true;
                    break;
                }
            }
        }
        if (hit) ++blocked;
    }
    ThroughputReport out;
    out.measure = MeasureKind::Throughput;
    out.jammer_present = true;
    out.w = static_cast<unsigned>(u.size());
    out.value = one_minus(blocked, v);
    return out;
}

ThroughputReport jammed_throughput(const Scheme& scheme, std::size_t x_index,
                                   const std::vector<std::size_t>& u_indices,
                                   const std::vector<FHSequence>& jammers) {
    scheme.validate();
    if (x_index >= scheme.k()) throw validation_error("jammed_throughput: X index out of range");
    validate_indices(scheme, u_indices, "jammed_throughput");
    if (std::find(u_indices.begin(), u_indices.end(), x_index) != u_indices.end())
        throw validation_error("jammed_throughput: X must not be a member of U");
    validate_jammers(scheme, jammers);
    std::vector<FHSequence> u;
    u.reserve(u_indices.size());
    for (std::size_t i : u_indices) u.push_back(scheme.sequences[i]);
    return jammed_throughput(scheme.sequences[x_index], u, jammers);
}

std::vector<ThroughputReport> jammed_measure_family(const Scheme& scheme, unsigned w,
                                                    const std::vector<FHSequence>& jammers,
                                                    ComputeMode mode, const EnumerationPolicy& policy,
                                                    const FamilySelection& selection) {
    if (jammers.empty())
        throw validation_error("jammed_measure_family: J must be nonempty (use the jammer-free measures)");
    scheme.validate();
    if (static_cast<std::size_t>(w) + 1 > scheme.k())
        throw validation_error("jammed_measure_family: w + 1 exceeds k");
    validate_jammers(scheme, jammers);

    std::vector<std::size_t> v_indices = selection.v_indices;
    if (v_indices.empty()) {
        for (std::size_t i = 0; i <= w; ++i) v_indices.push_back(i);
    }
    if (v_indices.size() != static_cast<std::size_t>(w) + 1)
        throw validation_error("jammed_measure_family: V must contain exactly w + 1 indices");

    std::vector<ThroughputReport> out;
    out.push_back(sequence_level(scheme, selection.x_index, w, mode, policy, &jammers, false));
    out.push_back(subset_level(scheme, v_indices, &jammers, false));
    out.push_back(scheme_level(scheme, w, mode, policy, &jammers, false));
    out.push_back(sequence_level(scheme, selection.x_index, w, mode, policy, &jammers, true));
    out.push_back(subset_level(scheme, v_indices, &jammers, true));
    out.push_back(scheme_level(scheme, w, mode, policy, &jammers, true));
    return out;
}

} // namespace fhs::metrics
