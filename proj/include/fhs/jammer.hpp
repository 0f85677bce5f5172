#ifndef FHS_JAMMER_HPP
#define FHS_JAMMER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fhs/core.hpp"
#include "fhs/rational.hpp"
#include "fhs/rng.hpp"

namespace fhs::jammer {

// Probability that channel i carries an active transmission, given the slot
// multiplicity a_i out of k sequences with w+1 active:
// 1 - C(k - a_i, w+1) / C(k, w+1), exact.
Rational channel_active_probability(const std::vector<unsigned>& multiplicity, std::uint64_t k,
                                    unsigned w, Channel i);

enum class Strategy {
    MaxProbability, // argmax of the active-channel probability over the search space
    UniformRandom,
    FixedChannel,
    Scripted,
};

enum class TieBreak { LowestChannel, SeededRandom };

struct JammerConfig {
    unsigned eavesdrop_count = 1; // theta_1 m channels listened per slot (0 allowed)
    unsigned jam_count = 1;       // theta_2 m channels jammed per slot (< m)
    Strategy strategy = Strategy::MaxProbability;
    TieBreak tie_break = TieBreak::LowestChannel;
    Channel fixed_channel = 0;              // FixedChannel only
    std::vector<Channel> scripted_channels; // Scripted only: one channel per searching slot
    std::uint64_t rng_seed = 0;

    void validate(unsigned m) const;
};

struct SessionConfig {
    std::vector<std::size_t> active_indices; // the w+1 sequences in use (S'')
    std::size_t victim_index = 0;            // must be active
    std::uint64_t rng_seed = 0;

    void validate(const Scheme& scheme) const;
};

struct SlotRecord {
    std::size_t slot = 0;
    std::vector<Channel> eavesdropped;
    bool heard_active = false;   // lucky (some eavesdropped channel was active)
    std::uint64_t search_before = 0;
    std::uint64_t search_after = 0;
    std::vector<Channel> jammed;
    bool victim_blocked = false; // mutual interference or jam hit on the victim
};

// The jammer's evolving knowledge during the search phase.
struct SearchState {
    std::vector<std::size_t> search; // S*_t, ascending scheme indices
    bool no_lucky_yet = true;        // no restriction step has happened
    unsigned unlucky_count = 0;      // B

    static SearchState initial(const Scheme& scheme);
};

// One eavesdrop/update/jam-selection step at the given slot. The oracle
// answers, per queried channel, whether any active sequence uses it at this
// slot - channel activity only, never sequence identity. A heard-active
// channel set restricts the space to sequences on those channels; an
// all-inactive observation removes the observed channels' users (which can
// never discard an active sequence). Eavesdropping nothing (count 0 or an
// exhausted script) leaves the space unchanged. For per-slot-keyed schemes
// the realized table is unknowable, so observations never prune the space.
// The returned record carries the slot's eavesdrop set, luck, search sizes,
// and the search-phase jam selection; victim accounting is left zeroed for
// run_session to fill.
SlotRecord jammer_step(const Scheme& scheme, SearchState& state, const JammerConfig& config,
                       std::size_t slot, unsigned active_count,
                       const std::function<bool(Channel)>& activity_oracle, SplitMix64& rng);

enum class Outcome { IdentifiedSequence, SearchSpaceAtMostActive, SessionEnded };

struct JammerTrace {
    std::vector<SlotRecord> slots;
    std::optional<std::size_t> identification_slot; // number of slots the search needed
    std::optional<std::size_t> lock_target;         // sequence the jammer locked onto
    unsigned unlucky_count = 0;                     // B
    Outcome outcome = Outcome::SessionEnded;
    unsigned victim_blocked_slots = 0;
    Rational victim_throughput;                     // per the jammed throughput measure
    std::vector<std::size_t> final_search_space;    // indices remaining when the session ended
};

// One session of v slots. The search space starts as the whole scheme and
// shrinks through channel-activity observations only (no sequence identity
// leaks). The search stops, switching to lock-on jamming, when the jammer
// can certify an active sequence from its observations:
//   - the search space is a single sequence that is genuinely active, or
//   - every eavesdrop so far was unlucky (so the space provably contains
//     all active sequences) and its size is at most w+1, which pins the
//     space to exactly the active set.
// A bare |S*| <= w+1 after a lucky step proves nothing (actives may have
// been discarded), so the search continues; this is what makes the
// minimum-slots guarantee of the MDS constructions observable.
// For per-slot-keyed schemes (sR-LS) the realized hop table is not known to
// the jammer and fresh slot keys break cross-slot linkage, so the search
// space never shrinks; selection strategies then see only the uniform
// per-slot multiplicities.
JammerTrace run_session(const Scheme& scheme, const SessionConfig& session, const JammerConfig& jammer);

struct GammaEstimate {
    std::uint64_t trials = 0;
    std::uint64_t identified = 0;
    std::uint64_t session_ended = 0;
    std::optional<std::size_t> min_identification_slot;
    std::optional<std::size_t> max_identification_slot;
    double mean_identification_slot = 0.0; // over identified trials
    std::vector<std::uint64_t> slot_histogram; // index = identification slot
};

// Runs `trials` sessions with active sets (and victims) drawn uniformly
// from per-trial streams derived from rng_seed. Deterministic for a fixed
// seed regardless of thread count.
GammaEstimate estimate_gamma(const Scheme& scheme, unsigned w, const JammerConfig& jammer,
                             std::uint64_t trials, std::uint64_t rng_seed, unsigned threads = 1);

// Closed-form search-space size on a strength-t' index-1 orthogonal array
// after t single-channel eavesdrops, B of them unlucky: (m-1)^B m^(t'-t).
std::uint64_t predicted_search_space(unsigned m, unsigned t_prime, unsigned t, unsigned unlucky);

struct LuckReplay {
    std::vector<std::uint64_t> predicted; // |S*_0| .. |S*_len|
    std::vector<std::uint64_t> simulated;
    bool agree = false;
};

// Replays a scripted lucky/unlucky schedule (true = unlucky) against the
// simulator on an OA-verified MDS scheme and compares the realized search
//-space sizes with the closed form. The eavesdrop channel realizing each
// step is chosen as the lowest channel that is active (lucky) or inactive
// (unlucky) among the channels still present in the search space at that
// slot. Throws not_applicable_error when the scheme fails OA verification
// or a step cannot be realized.
LuckReplay replay_luck_schedule(const Scheme& scheme, unsigned t_prime,
                                const std::vector<bool>& unlucky_schedule,
                                const std::vector<std::size_t>& active_indices);

} // namespace fhs::jammer

#endif
