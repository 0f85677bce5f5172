#ifndef FHS_METRICS_HPP
#define FHS_METRICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "fhs/core.hpp"
#include "fhs/rational.hpp"

namespace fhs::metrics {

// Shared enumeration/sampling configuration. Exact modes refuse (with
// budget_error) when the subset count exceeds `budget`; there is never a
// silent fallback to sampling. Monte Carlo draws `samples` subsets from
// per-sample streams derived from `seed`, so results do not depend on
// `threads`.
struct EnumerationPolicy {
    std::uint64_t budget = 1000000;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

enum class MeasureKind {
    Throughput,          // one (X, U) evaluation
    AverageOfSequence,
    AverageOfSubset,
    AverageOfScheme,
    WorstOfSequence,
    WorstOfSubset,
    WorstOfScheme,
};

enum class ComputeMode { Exact, MonteCarlo };

struct MeasureWitness {
    std::optional<std::size_t> sequence; // X achieving the extremum (scheme index)
    std::vector<std::size_t> subset;     // the U or V scheme indices involved
};

struct ThroughputReport {
    MeasureKind measure = MeasureKind::Throughput;
    bool jammer_present = false;
    unsigned w = 0;
    Rational value;                      // in [0, 1]
    ComputeMode mode = ComputeMode::Exact;
    std::optional<std::uint64_t> sample_count;  // MonteCarlo only
    std::optional<double> standard_error;       // MonteCarlo averages only
    bool min_estimated_from_above = false;      // sampling cannot certify a minimum
    std::optional<MeasureWitness> witness;      // worst-case measures, Exact mode
};

struct GroupCorrelationResult {
    unsigned blocked_slots = 0;                    // G(X, U)
    std::vector<std::size_t> blocked_slot_indices; // ascending slot order
    std::vector<std::size_t> blockers;             // per blocked slot: first colliding index into U
};

// G(X, U): slots where X uses the same channel as some member of U, with no
// time shifts. U must be nonempty and length-compatible.
GroupCorrelationResult group_correlation(const FHSequence& x, const std::vector<FHSequence>& u);
GroupCorrelationResult group_correlation(const Scheme& scheme, std::size_t x_index,
                                         const std::vector<std::size_t>& u_indices);

// rho_w(X, U) = 1 - G(X, U)/v.
ThroughputReport throughput(const FHSequence& x, const std::vector<FHSequence>& u);
ThroughputReport throughput(const Scheme& scheme, std::size_t x_index,
                            const std::vector<std::size_t>& u_indices);

// Mean of rho_w(X, U) over all w-subsets U of S \ {X}.
ThroughputReport average_throughput_of_sequence(const Scheme& scheme, std::size_t x_index,
                                                unsigned w, ComputeMode mode,
                                                const EnumerationPolicy& policy = {});

// Mean over X in V of rho_w(X, V \ {X}); |V| = w + 1.
ThroughputReport average_throughput_of_subset(const Scheme& scheme,
                                              const std::vector<std::size_t>& v_indices);

// Mean of the subset average over all (w+1)-subsets of S.
ThroughputReport average_throughput_of_scheme(const Scheme& scheme, unsigned w, ComputeMode mode,
                                              const EnumerationPolicy& policy = {});

ThroughputReport worst_case_throughput_of_sequence(const Scheme& scheme, std::size_t x_index,
                                                   unsigned w, ComputeMode mode,
                                                   const EnumerationPolicy& policy = {});

ThroughputReport worst_case_throughput_of_subset(const Scheme& scheme,
                                                 const std::vector<std::size_t>& v_indices);

struct WorstCaseSchemeReport {
    ThroughputReport report;
    // Present when the scheme carries a distance certificate d with
    // d * w^2 > v * (w^2 - 1): the guaranteed strict lower bound 1 - 1/w.
    std::optional<Rational> distance_lower_bound;
};

WorstCaseSchemeReport worst_case_throughput_of_scheme(const Scheme& scheme, unsigned w,
                                                      ComputeMode mode,
                                                      const EnumerationPolicy& policy = {});

// rho_{w,J}(X, U u J) = 1 - G(X, U u J)/v. U may be empty here (a victim
// facing only the jammer), unlike the jammer-free measure.
ThroughputReport jammed_throughput(const FHSequence& x, const std::vector<FHSequence>& u,
                                   const std::vector<FHSequence>& jammers);
ThroughputReport jammed_throughput(const Scheme& scheme, std::size_t x_index,
                                   const std::vector<std::size_t>& u_indices,
                                   const std::vector<FHSequence>& jammers);

// The six jammer-aware measures (average/worst-case at sequence, subset and
// scheme level), evaluated for the given sequence index and (w+1)-subset.
// The sequence- and subset-level rows need a concrete X and V; callers pick
// them (the CLI defaults to X = sequence 0 and V = the first w+1 indices).
struct FamilySelection {
    std::size_t x_index = 0;
    std::vector<std::size_t> v_indices; // empty means {0, .., w}
};

std::vector<ThroughputReport> jammed_measure_family(const Scheme& scheme, unsigned w,
                                                    const std::vector<FHSequence>& jammers,
                                                    ComputeMode mode,
                                                    const EnumerationPolicy& policy = {},
                                                    const FamilySelection& selection = {});

} // namespace fhs::metrics

#endif
