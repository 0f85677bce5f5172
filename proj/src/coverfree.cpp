#include "fhs/coverfree.hpp"

#include <algorithm>

#include "fhs/combinatorics.hpp"
#include "fhs/constructions.hpp"
#include "fhs/errors.hpp"
#include "fhs/parallel.hpp"
#include "fhs/rng.hpp"

namespace fhs::coverfree {

namespace {

void validate_subset(const Scheme& scheme, std::size_t z_index, const std::vector<std::size_t>& indices) {
    if (z_index >= scheme.k()) throw validation_error("cover_set: Z index out of range");
    std::vector<bool> seen(scheme.k(), false);
    for (std::size_t i : indices) {
        if (i >= scheme.k()) throw validation_error("cover_set: subset index out of range");
        if (seen[i]) throw validation_error("cover_set: duplicate subset index");
        if (i == z_index) throw validation_error("cover_set: Z must not belong to S'");
        seen[i] = true;
    }
}

unsigned cover_size(const Scheme& scheme, std::size_t z_index, const std::size_t* subset,
                    std::size_t len) {
    const auto& z = scheme.sequences[z_index];
    unsigned covered = 0;
    for (std::size_t t = 0; t < z.length(); ++t) {
        for (std::size_t i = 0; i < len; ++i) {
            if (scheme.sequences[subset[i]].values[t] == z.values[t]) {
                ++covered;
                break;
            }
        }
    }
    return covered;
}

inline std::size_t skip_index(std::size_t pos, std::size_t z_index) {
    return pos < z_index ? pos : pos + 1;
}

// Strict covering test in integer arithmetic: |I| < (1 - alpha) v, i.e.
// |I| * den < (den - num) * v for alpha = num/den.
bool cover_is_small_enough(unsigned cover, const Rational& alpha, std::size_t v) {
    const BigInt lhs = BigInt::from_uint64(cover) * alpha.den();
    const BigInt rhs = (alpha.den() - alpha.num()) * BigInt::from_uint64(v);
    return lhs < rhs;
}

} // namespace

std::vector<std::size_t> cover_set(const FHSequence& z, const std::vector<FHSequence>& s_prime) {
    if (s_prime.empty()) throw validation_error("cover_set: S' must be nonempty");
    const std::size_t v = z.length();
    if (v == 0) throw validation_error("cover_set: empty sequence");
    for (const auto& y : s_prime) {
        if (y.length() != v) throw validation_error("cover_set: length mismatch");
    }
    std::vector<std::size_t> positions;
    for (std::size_t t = 0; t < v; ++t) {
        for (const auto& y : s_prime) {
            if (y.values[t] == z.values[t]) {
                positions.push_back(t);
                break;
            }
        }
    }
    return positions;
}

std::vector<std::size_t> cover_set(const Scheme& scheme, std::size_t z_index,
                                   const std::vector<std::size_t>& s_prime_indices) {
    scheme.validate();
    if (s_prime_indices.empty()) throw validation_error("cover_set: S' must be nonempty");
    validate_subset(scheme, z_index, s_prime_indices);
    std::vector<FHSequence> s_prime;
    s_prime.reserve(s_prime_indices.size());
    for (std::size_t i : s_prime_indices) s_prime.push_back(scheme.sequences[i]);
    return cover_set(scheme.sequences[z_index], s_prime);
}

MaxCoverResult max_cover(const Scheme& scheme, unsigned w, const metrics::EnumerationPolicy& policy) {
    scheme.validate();
    if (w < 1 || w > scheme.k() - 1) throw validation_error("max_cover: need 1 <= w <= k - 1");
    const std::uint64_t per_z = binomial_capped(scheme.k() - 1, w, policy.budget);
    const std::uint64_t total = per_z > policy.budget / scheme.k() ? policy.budget + 1 : per_z * scheme.k();
    if (total > policy.budget)
        throw budget_error("max_cover: exhaustive scan exceeds the evaluation budget", total,
                           policy.budget);

    struct Best {
        bool any = false;
        unsigned cover = 0;
        std::size_t z = 0;
        std::uint64_t rank = 0;
        std::vector<std::size_t> subset;
    };
    const unsigned workers = policy.threads ? policy.threads : 1;
    std::vector<Best> best(workers);
    parallel_chunks(scheme.k(), workers, [&](unsigned worker, std::uint64_t zbegin, std::uint64_t zend) {
        std::vector<std::size_t> real(w);
        for (std::size_t z = zbegin; z < zend; ++z) {
            CombinationCursor cursor(scheme.k() - 1, w);
            std::uint64_t rank = 0;
            do {
                const auto& pos = cursor.indices();
                for (unsigned i = 0; i < w; ++i) real[i] = skip_index(pos[i], z);
                const unsigned c = cover_size(scheme, z, real.data(), w);
                Best& b = best[worker];
                if (!b.any || c > b.cover) {
                    b.any = true;
                    b.cover = c;
                    b.z = z;
                    b.rank = rank;
                    b.subset = real;
                }
                ++rank;
            } while (cursor.advance());
        }
    });
    Best merged;
    for (const auto& b : best) {
        if (!b.any) continue;
        if (!merged.any || b.cover > merged.cover ||
            (b.cover == merged.cover && (b.z < merged.z || (b.z == merged.z && b.rank < merged.rank))))
            merged = b;
    }
    return MaxCoverResult{merged.cover, merged.z, merged.subset};
}

bool counterexample_violates(const Scheme& scheme, unsigned w, const Rational& alpha,
                             const CfcCounterexample& ce) {
    if (ce.subset_indices.size() != w) return false;
    auto positions = cover_set(scheme, ce.z_index, ce.subset_indices);
    if (positions != ce.cover_positions) return false;
    return !cover_is_small_enough(static_cast<unsigned>(positions.size()), alpha, scheme.v());
}

CfcCertificate is_cover_free(const Scheme& scheme, unsigned w, const Rational& alpha,
                             CfcMethod method, const metrics::EnumerationPolicy& policy) {
    scheme.validate();
    if (w < 1 || w > scheme.k() - 1) throw validation_error("is_cover_free: need 1 <= w <= k - 1");
    if (alpha < Rational(0) || alpha >= Rational(1))
        throw validation_error("is_cover_free: alpha must lie in [0, 1)");

    CfcCertificate cert;
    cert.method = method;
    cert.parameters = {w, alpha};

    switch (method) {
        case CfcMethod::Exhaustive: {
            // First counterexample in (Z index, subset rank) order; workers
            // scan disjoint Z ranges so the merge below is deterministic.
            const std::uint64_t per_z = binomial_capped(scheme.k() - 1, w, policy.budget);
            const std::uint64_t total =
                per_z > policy.budget / scheme.k() ? policy.budget + 1 : per_z * scheme.k();
            if (total > policy.budget)
                throw budget_error("is_cover_free: exhaustive scan exceeds the evaluation budget", total,
                                   policy.budget);
            struct Found {
                bool any = false;
                std::size_t z = 0;
                std::vector<std::size_t> subset;
            };
            const unsigned workers = policy.threads ? policy.threads : 1;
            std::vector<Found> found(workers);
            parallel_chunks(scheme.k(), workers,
                            [&](unsigned worker, std::uint64_t zbegin, std::uint64_t zend) {
                                std::vector<std::size_t> real(w);
                                for (std::size_t z = zbegin; z < zend && !found[worker].any; ++z) {
                                    CombinationCursor cursor(scheme.k() - 1, w);
                                    do {
                                        const auto& pos = cursor.indices();
                                        for (unsigned i = 0; i < w; ++i) real[i] = skip_index(pos[i], z);
                                        const unsigned c = cover_size(scheme, z, real.data(), w);
                                        if (!cover_is_small_enough(c, alpha, scheme.v())) {
                                            found[worker] = {true, z, real};
                                            break;
                                        }
                                    } while (cursor.advance());
                                }
                            });
            for (const auto& f : found) {
                if (!f.any) continue;
                cert.verdict = CfcVerdict::ProvenNotCfc;
                CfcCounterexample ce;
                ce.z_index = f.z;
                ce.subset_indices = f.subset;
                ce.cover_positions = cover_set(scheme, f.z, f.subset);
                cert.counterexample = ce;
                return cert;
            }
            cert.verdict = CfcVerdict::ProvenCfc;
            return cert;
        }
        case CfcMethod::DistanceCertificate: {
            const Rational alpha_cap = Rational(1) - Rational(1, w);
            if (alpha > alpha_cap)
                throw not_applicable_error(
                    "is_cover_free: the distance certificate proves alpha = 1 - 1/w at most");
            unsigned d = 0;
            if (scheme.metadata.distance_certificate.has_value()) {
                d = *scheme.metadata.distance_certificate;
            } else {
                d = construct::verify_min_distance(scheme, policy.budget, policy.samples, policy.seed,
                                                   policy.threads)
                        .distance;
            }
            const std::uint64_t w2 = static_cast<std::uint64_t>(w) * w;
            const bool premise =
                BigInt::from_uint64(d) * BigInt::from_uint64(w2) >
                BigInt::from_uint64(scheme.v()) * BigInt::from_uint64(w2 - 1);
            if (!premise)
                throw not_applicable_error("is_cover_free: minimum distance " + std::to_string(d) +
                                           " does not satisfy d w^2 > v (w^2 - 1)");
            cert.verdict = CfcVerdict::ProvenCfc;
            cert.distance_used = d;
            return cert;
        }
        case CfcMethod::Sampled: {
            struct Found {
                bool any = false;
                std::size_t z = 0;
                std::vector<std::size_t> subset;
                std::uint64_t trial = 0;
            };
            const unsigned workers = policy.threads ? policy.threads : 1;
            std::vector<Found> found(workers);
            parallel_chunks(policy.samples, workers,
                            [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
                                std::vector<std::size_t> real(w);
                                for (std::uint64_t s = begin; s < end; ++s) {
                                    if (found[worker].any) return;
                                    SplitMix64 rng(derive_seed(policy.seed, s));
                                    const std::size_t z = static_cast<std::size_t>(rng.bounded(scheme.k()));
                                    auto pos = sample_combination(rng, scheme.k() - 1, w);
                                    for (unsigned i = 0; i < w; ++i) real[i] = skip_index(pos[i], z);
                                    const unsigned c = cover_size(scheme, z, real.data(), w);
                                    if (!cover_is_small_enough(c, alpha, scheme.v()))
                                        found[worker] = {true, z, real, s};
                                }
                            });
            const Found* first = nullptr;
            for (const auto& f : found) {
                if (f.any && (first == nullptr || f.trial < first->trial)) first = &f;
            }
            cert.trials = policy.samples;
            if (first != nullptr) {
                cert.verdict = CfcVerdict::ProvenNotCfc;
                CfcCounterexample ce;
                ce.z_index = first->z;
                ce.subset_indices = first->subset;
                ce.cover_positions = cover_set(scheme, first->z, first->subset);
                cert.counterexample = ce;
            } else {
                cert.verdict = CfcVerdict::SampledNoCounterexample;
            }
            return cert;
        }
    }
    throw validation_error("is_cover_free: unknown method");
}

CfcThroughputStatement cfc_to_fhs_throughput(const CfcCertificate& certificate, const Scheme& scheme,
                                             const metrics::EnumerationPolicy& policy) {
    if (certificate.verdict != CfcVerdict::ProvenCfc)
        throw validation_error("cfc_to_fhs_throughput: requires a ProvenCfc certificate");
    CfcThroughputStatement out;
    out.w = certificate.parameters.w;
    out.alpha = certificate.parameters.alpha;
    out.guarantee = true;
    const std::uint64_t subsets =
        binomial_capped(scheme.k(), certificate.parameters.w + 1, policy.budget);
    if (subsets <= policy.budget) {
        auto worst =
            metrics::worst_case_throughput_of_scheme(scheme, certificate.parameters.w,
                                                     metrics::ComputeMode::Exact, policy);
        out.exact_worst_case = worst.report.value;
        out.implication_holds = worst.report.value > certificate.parameters.alpha;
    }
    return out;
}

} // namespace fhs::coverfree
