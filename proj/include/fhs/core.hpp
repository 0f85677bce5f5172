#ifndef FHS_CORE_HPP
#define FHS_CORE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fhs/rational.hpp"

namespace fhs {

using Channel = std::uint32_t;

// The alphabet of available frequency channels, identified with 0..m-1.
struct FrequencyLibrary {
    unsigned m = 2;

    void validate() const;
};

// One hopping schedule: the channel to use at each of v time slots.
struct FHSequence {
    std::vector<Channel> values;

    FHSequence() = default;
    explicit FHSequence(std::vector<Channel> v) : values(std::move(v)) {}
    std::size_t length() const { return values.size(); }
    Channel at(std::size_t t) const { return values[t]; }
    friend bool operator==(const FHSequence& a, const FHSequence& b) { return a.values == b.values; }
};

// Construction provenance carried with a scheme. Analyses use it for
// certificates (e.g. the known minimum distance of an MDS construction) and
// the jammer model uses per_slot_keyed to decide whether the hop table is
// enumerable by an eavesdropper.
struct SchemeMetadata {
    std::string kind;                     // "", "mds", "rs-cfc", "srls"
    std::optional<unsigned> mds_v;
    std::optional<unsigned> mds_t_prime;
    std::optional<std::uint64_t> mds_p;
    std::optional<unsigned> distance_certificate;
    bool per_slot_keyed = false;          // sequences derive from fresh per-slot keys
    std::optional<std::uint64_t> session; // sR-LS session number
};

// A (v, k, m) frequency hopping scheme: k sequences of length v over a
// library of m channels. Duplicate sequences are permitted but surfaced by
// find_duplicate_pairs(), since they force worst-case behaviour.
struct Scheme {
    FrequencyLibrary library;
    std::vector<FHSequence> sequences;
    std::string label;
    SchemeMetadata metadata;

    std::size_t k() const { return sequences.size(); }
    std::size_t v() const { return sequences.empty() ? 0 : sequences.front().length(); }
    unsigned m() const { return library.m; }

    void validate() const; // throws validation_error on any broken invariant
    std::vector<std::pair<std::size_t, std::size_t>> find_duplicate_pairs() const;
};

// --- Pairwise Hamming correlation -----------------------------------------

// Number of positions where x and the cyclic shift of y by tau agree.
unsigned hamming_correlation(const FHSequence& x, const FHSequence& y, std::size_t tau);

// Maximum out-of-phase autocorrelation, tau in [1, v).
unsigned max_autocorrelation(const FHSequence& x);

// Maximum cross-correlation over all shifts, tau in [0, v).
unsigned max_crosscorrelation(const FHSequence& x, const FHSequence& y);

// max{ H(X), H(Y), H(X,Y) }.
unsigned m_measure(const FHSequence& x, const FHSequence& y);

struct AutocorrelationWitness {
    std::size_t sequence;
    std::size_t tau;
};
struct CrosscorrelationWitness {
    std::size_t first;
    std::size_t second;
    std::size_t tau;
};

// Set-level maxima with argmax witnesses. H_a is absent when v < 2 (no
// out-of-phase shift exists), H_c when k < 2; at least one must exist.
struct CorrelationSummary {
    std::optional<unsigned> autocorrelation_max;   // H_a
    std::optional<AutocorrelationWitness> autocorrelation_witness;
    std::optional<unsigned> crosscorrelation_max;  // H_c
    std::optional<CrosscorrelationWitness> crosscorrelation_witness;
    unsigned overall_max = 0;                      // H_m
    bool has_duplicates = false;
};

CorrelationSummary correlation_summary(const Scheme& scheme);

// --- Correlation lower bounds ----------------------------------------------

enum class BoundName { LempelGreenberger1, LempelGreenberger2, PengFan };

struct BoundInputs {
    std::optional<std::uint64_t> v, k, m, r, p, n, i, capital_i;
};

// Exact-rational bound report. integer_bound is ceil(raw_value) clamped at
// zero; correlations are integers, so that is the effective bound.
struct BoundReport {
    BoundName name;
    Rational raw_value;
    BigInt integer_bound;
    BoundInputs inputs;
    std::optional<bool> is_met_with_equality; // set via compare_bound()
};

BoundReport lempel_greenberger_bound_1(std::uint64_t v, std::uint64_t m);
BoundReport lempel_greenberger_bound_2(std::uint64_t p, std::uint64_t n, std::uint64_t i);
BoundReport peng_fan_bound(std::uint64_t v, std::uint64_t k, std::uint64_t m);

void compare_bound(BoundReport& report, std::uint64_t measured);

bool is_prime(std::uint64_t n);

// --- Per-slot channel occupancy ---------------------------------------------

// Multiplicity vector of channels at one slot; the active view counts only
// the given subset of sequence indices.
struct SlotOccupancy {
    std::size_t slot;
    std::vector<unsigned> multiplicity;                           // size m, sums to k
    std::optional<std::vector<unsigned>> active_multiplicity;     // sums to |active|
};

SlotOccupancy slot_occupancy(const Scheme& scheme, std::size_t t,
                             const std::vector<std::size_t>* active = nullptr);

// Slot t entry is true iff all m channel multiplicities there are equal
// (which requires m | k).
std::vector<bool> check_slot_uniformity(const Scheme& scheme);

enum class TransitionStatus { Uniform, NonUniform, Vacuous };

// Entry (t, i), for t in [0, v-1): restricted to sequences using channel i
// at slot t, are the channels at slot t+1 uniformly distributed? Vacuous
// when no sequence uses i at t.
struct TransitionUniformity {
    std::vector<std::vector<TransitionStatus>> table; // (v-1) rows of m entries
    bool all_uniform_or_vacuous() const;
    std::size_t vacuous_count() const;
    std::optional<std::pair<std::size_t, Channel>> first_non_uniform() const;
};

TransitionUniformity check_transition_uniformity(const Scheme& scheme);

} // namespace fhs

#endif
