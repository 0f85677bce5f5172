#ifndef FHS_COVERFREE_HPP
#define FHS_COVERFREE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fhs/core.hpp"
#include "fhs/metrics.hpp"
#include "fhs/rational.hpp"

namespace fhs::coverfree {

struct CfcParameters {
    unsigned w = 1;
    Rational alpha; // in [0, 1); the defining condition is strict: |I| < (1 - alpha) v
};

enum class CfcVerdict { ProvenCfc, ProvenNotCfc, SampledNoCounterexample };
enum class CfcMethod { Exhaustive, DistanceCertificate, Sampled };

struct CfcCounterexample {
    std::size_t z_index = 0;
    std::vector<std::size_t> subset_indices;
    std::vector<std::size_t> cover_positions; // I(Z, S')
};

struct CfcCertificate {
    CfcVerdict verdict = CfcVerdict::ProvenCfc;
    CfcMethod method = CfcMethod::Exhaustive;
    CfcParameters parameters;
    std::optional<CfcCounterexample> counterexample; // present iff ProvenNotCfc
    std::optional<std::uint64_t> trials;             // Sampled only
    std::optional<unsigned> distance_used;           // DistanceCertificate only
};

// I(Z, S'): positions where Z agrees with some member of S'.
std::vector<std::size_t> cover_set(const FHSequence& z, const std::vector<FHSequence>& s_prime);
std::vector<std::size_t> cover_set(const Scheme& scheme, std::size_t z_index,
                                   const std::vector<std::size_t>& s_prime_indices);

// Largest cover over all Z in S and all w-subsets S' of S \ {Z}, with the
// lexicographically first (Z index, subset) witness. This is the quantity
// both the CFC decision and the worst-case w-throughput reduce to; the
// metrics module intentionally computes the latter by a different
// enumeration so the two can cross-check each other.
struct MaxCoverResult {
    unsigned max_blocked = 0;
    std::size_t z_index = 0;
    std::vector<std::size_t> subset_indices;
};

MaxCoverResult max_cover(const Scheme& scheme, unsigned w,
                         const metrics::EnumerationPolicy& policy = {});

// Decides whether the scheme is a (w, alpha)-CFC.
//   Exhaustive          scans every (Z, S') pair within the budget.
//   DistanceCertificate applies the large-distance sufficient condition
//                       d w^2 > v (w^2 - 1), proving (w, 1 - 1/w); valid for
//                       any requested alpha <= 1 - 1/w. Throws
//                       not_applicable_error when alpha > 1 - 1/w or the
//                       premise fails (certificates never prove a negative).
//   Sampled             seeded random (Z, S') trials; can only disprove.
CfcCertificate is_cover_free(const Scheme& scheme, unsigned w, const Rational& alpha,
                             CfcMethod method, const metrics::EnumerationPolicy& policy = {});

// Independent recheck of a stored counterexample (used by tests and report
// consumers; a ProvenNotCfc verdict must survive this).
bool counterexample_violates(const Scheme& scheme, unsigned w, const Rational& alpha,
                             const CfcCounterexample& ce);

struct CfcThroughputStatement {
    unsigned w = 0;
    Rational alpha;
    bool guarantee = false;                  // rho_hat_w(S) > alpha
    std::optional<Rational> exact_worst_case; // filled when within budget
    std::optional<bool> implication_holds;    // exact value checked against alpha
};

// The CFC <-> worst-case-throughput correspondence: a ProvenCfc certificate
// yields the guarantee rho_hat_w(S) > alpha; when the exact worst case is
// cheap to compute it is evaluated and compared.
CfcThroughputStatement cfc_to_fhs_throughput(const CfcCertificate& certificate, const Scheme& scheme,
                                             const metrics::EnumerationPolicy& policy = {});

} // namespace fhs::coverfree

#endif
