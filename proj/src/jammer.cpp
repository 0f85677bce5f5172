#include "fhs/jammer.hpp"

#include <algorithm>
#include <numeric>

#include "fhs/combinatorics.hpp"
#include "fhs/constructions.hpp"
#include "fhs/errors.hpp"
#include "fhs/parallel.hpp"
#include "fhs/rng.hpp"

namespace fhs::jammer {

Rational channel_active_probability(const std::vector<unsigned>& multiplicity, std::uint64_t k,
                                    unsigned w, Channel i) {
    if (i >= multiplicity.size()) throw validation_error("channel_active_probability: channel out of range");
    std::uint64_t total = 0;
    for (unsigned a : multiplicity) total += a;
    if (total != k) throw validation_error("channel_active_probability: multiplicities must sum to k");
    const std::uint64_t active = static_cast<std::uint64_t>(w) + 1;
    if (active > k) throw validation_error("channel_active_probability: w + 1 exceeds k");
    const unsigned a_i = multiplicity[i];
    return Rational(1) - Rational(binomial(k - a_i, active), binomial(k, active));
}

void JammerConfig::validate(unsigned m) const {
    if (jam_count >= m) throw validation_error("JammerConfig: cannot jam all m channels");
    if (eavesdrop_count > m) throw validation_error("JammerConfig: cannot eavesdrop on more than m channels");
    if (strategy == Strategy::FixedChannel) {
        if (fixed_channel >= m) throw validation_error("JammerConfig: fixed channel out of range");
        if (eavesdrop_count > 1 || jam_count > 1)
            throw validation_error("JammerConfig: FixedChannel uses a single channel per slot");
    }
    if (strategy == Strategy::Scripted) {
        if (eavesdrop_count != 1 || jam_count > 1)
            throw validation_error("JammerConfig: Scripted drives one channel per slot");
        for (Channel c : scripted_channels) {
            if (c >= m) throw validation_error("JammerConfig: scripted channel out of range");
        }
    }
}

void SessionConfig::validate(const Scheme& scheme) const {
    if (active_indices.empty() || active_indices.size() > scheme.k())
        throw validation_error("SessionConfig: need 1 <= w + 1 <= k active sequences");
    std::vector<bool> seen(scheme.k(), false);
    for (std::size_t i : active_indices) {
        if (i >= scheme.k()) throw validation_error("SessionConfig: active index out of range");
        if (seen[i]) throw validation_error("SessionConfig: duplicate active index");
        seen[i] = true;
    }
    if (victim_index >= scheme.k() || !seen[victim_index])
        throw validation_error("SessionConfig: victim must be one of the active sequences");
}

namespace {

// Ranked channel list for the current slot. MaxProbability orders by the
// exact active-probability, which is monotone in the slot multiplicity and
// saturates at 1 once a_i >= |S*| - w; ties follow the configured
// tie-break. UniformRandom is a seeded shuffle of all channels.
std::vector<Channel> ranked_channels(const Scheme& scheme, const SearchState& state,
                                     const JammerConfig& config, std::size_t t,
                                     unsigned active_count, SplitMix64& rng) {
    const unsigned m = scheme.m();
    std::vector<Channel> order(m);
    std::iota(order.begin(), order.end(), 0);

    if (config.strategy == Strategy::UniformRandom) {
        for (unsigned i = m; i > 1; --i) std::swap(order[i - 1], order[rng.bounded(i)]);
        return order;
    }

    // Multiplicities over the search space; fall back to the whole scheme
    // when the search space is empty (only reachable via scripted
    // misidentification paths).
    std::vector<std::uint64_t> mult(m, 0);
    std::uint64_t pool = 0;
    if (state.search.empty()) {
        for (const auto& seq : scheme.sequences) ++mult[seq.values[t]];
        pool = scheme.k();
    } else {
        for (std::size_t idx : state.search) ++mult[scheme.sequences[idx].values[t]];
        pool = state.search.size();
    }
    // Probability saturation: every a_i >= pool - w has active-probability
    // exactly 1, so such channels tie.
    std::vector<std::uint64_t> key(m);
    const bool saturates = active_count <= pool;
    const std::uint64_t sat = saturates && pool >= active_count ? pool - (active_count - 1) : UINT64_MAX;
    for (unsigned c = 0; c < m; ++c) key[c] = saturates ? std::min(mult[c], sat) : mult[c];

    std::stable_sort(order.begin(), order.end(),
                     [&](Channel a, Channel b) { return key[a] > key[b]; });
    if (config.tie_break == TieBreak::SeededRandom) {
        std::size_t start = 0;
        while (start < order.size()) {
            std::size_t end = start + 1;
            while (end < order.size() && key[order[end]] == key[order[start]]) ++end;
            for (std::size_t i = end - start; i > 1; --i)
                std::swap(order[start + i - 1], order[start + rng.bounded(i)]);
            start = end;
        }
    }
    return order;
}

} // namespace

SearchState SearchState::initial(const Scheme& scheme) {
    SearchState state;
    state.search.resize(scheme.k());
    std::iota(state.search.begin(), state.search.end(), 0);
    return state;
}

SlotRecord jammer_step(const Scheme& scheme, SearchState& state, const JammerConfig& config,
                       std::size_t slot, unsigned active_count,
                       const std::function<bool(Channel)>& activity_oracle, SplitMix64& rng) {
    const unsigned m = scheme.m();
    const bool keyed = scheme.metadata.per_slot_keyed;

    SlotRecord record;
    record.slot = slot;
    record.search_before = state.search.size();

    std::vector<Channel> selection;
    if (config.strategy == Strategy::FixedChannel) {
        selection = {config.fixed_channel};
    } else if (config.strategy == Strategy::Scripted) {
        if (slot < config.scripted_channels.size()) selection = {config.scripted_channels[slot]};
        // An exhausted script observes nothing further.
    } else {
        selection = ranked_channels(scheme, state, config, slot, active_count, rng);
    }

    const std::size_t listen = std::min<std::size_t>(config.eavesdrop_count, selection.size());
    record.eavesdropped.assign(selection.begin(), selection.begin() + listen);

    bool lucky = false;
    std::vector<bool> observed_active(record.eavesdropped.size());
    for (std::size_t i = 0; i < record.eavesdropped.size(); ++i) {
        observed_active[i] = activity_oracle(record.eavesdropped[i]);
        lucky = lucky || observed_active[i];
    }
    record.heard_active = lucky;

    if (!record.eavesdropped.empty()) {
        if (lucky) {
            state.no_lucky_yet = false;
            if (!keyed) {
                std::vector<std::size_t> next;
                for (std::size_t idx : state.search) {
                    const Channel ch = scheme.sequences[idx].values[slot];
                    bool keep = false;
                    for (std::size_t i = 0; i < record.eavesdropped.size(); ++i)
                        keep = keep || (observed_active[i] && ch == record.eavesdropped[i]);
                    if (keep) next.push_back(idx);
                }
                state.search = std::move(next);
            }
        } else {
            ++state.unlucky_count;
            if (!keyed) {
                std::vector<std::size_t> next;
                for (std::size_t idx : state.search) {
                    const Channel ch = scheme.sequences[idx].values[slot];
                    bool observed = false;
                    for (Channel c : record.eavesdropped) observed = observed || ch == c;
                    if (!observed) next.push_back(idx);
                }
                state.search = std::move(next);
            }
        }
    }

    // Search-phase jamming: the eavesdropped channels first, then further
    // ranked channels, then the lowest unused ones.
    for (Channel c : selection) {
        if (record.jammed.size() >= config.jam_count) break;
        record.jammed.push_back(c);
    }
    for (Channel c = 0; record.jammed.size() < config.jam_count && c < m; ++c) {
        if (std::find(record.jammed.begin(), record.jammed.end(), c) == record.jammed.end())
            record.jammed.push_back(c);
    }

    record.search_after = state.search.size();
    return record;
}

JammerTrace run_session(const Scheme& scheme, const SessionConfig& session, const JammerConfig& config) {
    scheme.validate();
    session.validate(scheme);
    config.validate(scheme.m());

    const std::size_t v = scheme.v();
    const unsigned m = scheme.m();
    const unsigned active_count = static_cast<unsigned>(session.active_indices.size());

    SearchState state = SearchState::initial(scheme);
    std::vector<bool> is_active(scheme.k(), false);
    for (std::size_t i : session.active_indices) is_active[i] = true;

    SplitMix64 rng(fmix64(session.rng_seed ^ fmix64(config.rng_seed + 0x1D872B41DCB5A17Dull)));

    JammerTrace trace;
    trace.victim_throughput = Rational(1);
    std::optional<std::size_t> lock_target;
    bool identified_single = false;

    std::vector<bool> channel_active(m);
    for (std::size_t t = 0; t < v; ++t) {
        // Which channels carry active traffic this slot (the ground truth
        // the observation oracle answers from).
        std::fill(channel_active.begin(), channel_active.end(), false);
        for (std::size_t i : session.active_indices)
            channel_active[scheme.sequences[i].values[t]] = true;

        // Stop rule, evaluated on the space the previous slots produced.
        if (!lock_target.has_value()) {
            if (state.search.size() == 1 && is_active[state.search.front()]) {
                lock_target = state.search.front();
                identified_single = true;
                trace.identification_slot = t;
            } else if (state.no_lucky_yet && !state.search.empty() &&
                       state.search.size() <= active_count) {
                // Every observation so far was unlucky, so the space still
                // contains all actives; size <= w+1 pins it to exactly them.
                lock_target = state.search.front();
                trace.identification_slot = t;
            }
        }

        SlotRecord record;
        if (lock_target.has_value()) {
            record.slot = t;
            record.search_before = record.search_after = state.search.size();
            const Channel target_ch = scheme.sequences[*lock_target].values[t];
            record.jammed.push_back(target_ch);
            for (Channel c = 0; record.jammed.size() < config.jam_count && c < m; ++c) {
                if (c != target_ch) record.jammed.push_back(c);
            }
        } else {
            record = jammer_step(scheme, state, config, t, active_count,
                                 [&](Channel c) { return channel_active[c]; }, rng);
        }

        const Channel victim_ch = scheme.sequences[session.victim_index].values[t];
        bool blocked = false;
        for (std::size_t i : session.active_indices) {
            if (i != session.victim_index && scheme.sequences[i].values[t] == victim_ch) {
                blocked = true;
                break;
            }
        }
        if (!blocked)
            blocked =
                std::find(record.jammed.begin(), record.jammed.end(), victim_ch) != record.jammed.end();
        record.victim_blocked = blocked;
        if (blocked) ++trace.victim_blocked_slots;
        trace.slots.push_back(std::move(record));
    }

    trace.unlucky_count = state.unlucky_count;
    trace.lock_target = lock_target;
    if (lock_target.has_value()) {
        trace.outcome = identified_single ? Outcome::IdentifiedSequence : Outcome::SearchSpaceAtMostActive;
    } else {
        trace.outcome = Outcome::SessionEnded;
    }
    trace.victim_throughput =
        Rational(1) - Rational(trace.victim_blocked_slots, static_cast<std::int64_t>(v));
    trace.final_search_space = state.search;
    return trace;
}

GammaEstimate estimate_gamma(const Scheme& scheme, unsigned w, const JammerConfig& jammer,
                             std::uint64_t trials, std::uint64_t rng_seed, unsigned threads) {
    scheme.validate();
    if (trials < 1) throw validation_error("estimate_gamma: trials must be positive");
    if (static_cast<std::size_t>(w) + 1 > scheme.k())
        throw validation_error("estimate_gamma: w + 1 exceeds k");
    jammer.validate(scheme.m());

    struct Partial {
        std::uint64_t identified = 0;
        std::uint64_t ended = 0;
        std::uint64_t slot_sum = 0;
        std::optional<std::size_t> min_slot;
        std::optional<std::size_t> max_slot;
        std::vector<std::uint64_t> histogram;
    };
    const unsigned workers = threads ? threads : 1;
    std::vector<Partial> partials(workers);
    for (auto& p : partials) p.histogram.assign(scheme.v() + 1, 0);

    parallel_chunks(trials, workers, [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            SplitMix64 draw(derive_seed(rng_seed, trial * 2));
            SessionConfig session;
            session.active_indices = sample_combination(draw, scheme.k(), w + 1);
            session.victim_index = session.active_indices[draw.bounded(w + 1)];
            session.rng_seed = derive_seed(rng_seed, trial * 2 + 1);
            JammerConfig config = jammer;
            config.rng_seed = fmix64(jammer.rng_seed ^ session.rng_seed);
            JammerTrace trace = run_session(scheme, session, config);
            Partial& p = partials[worker];
            if (trace.identification_slot.has_value()) {
                const std::size_t slot = *trace.identification_slot;
                ++p.identified;
                p.slot_sum += slot;
                ++p.histogram[slot];
                if (!p.min_slot || slot < *p.min_slot) p.min_slot = slot;
                if (!p.max_slot || slot > *p.max_slot) p.max_slot = slot;
            } else {
                ++p.ended;
            }
        }
    });

    GammaEstimate out;
    out.trials = trials;
    out.slot_histogram.assign(scheme.v() + 1, 0);
    std::uint64_t slot_sum = 0;
    for (const auto& p : partials) {
        out.identified += p.identified;
        out.session_ended += p.ended;
        slot_sum += p.slot_sum;
        for (std::size_t i = 0; i < p.histogram.size(); ++i) out.slot_histogram[i] += p.histogram[i];
        if (p.min_slot && (!out.min_identification_slot || *p.min_slot < *out.min_identification_slot))
            out.min_identification_slot = p.min_slot;
        if (p.max_slot && (!out.max_identification_slot || *p.max_slot > *out.max_identification_slot))
            out.max_identification_slot = p.max_slot;
    }
    out.mean_identification_slot =
        out.identified > 0 ? static_cast<double>(slot_sum) / static_cast<double>(out.identified) : 0.0;
    return out;
}

std::uint64_t predicted_search_space(unsigned m, unsigned t_prime, unsigned t, unsigned unlucky) {
    if (t > t_prime || unlucky > t)
        throw validation_error("predicted_search_space: need 0 <= B <= t <= t'");
    std::uint64_t out = 1;
    for (unsigned i = 0; i < unlucky; ++i) out *= m - 1;
    for (unsigned i = 0; i < t_prime - t; ++i) out *= m;
    return out;
}

LuckReplay replay_luck_schedule(const Scheme& scheme, unsigned t_prime,
                                const std::vector<bool>& unlucky_schedule,
                                const std::vector<std::size_t>& active_indices) {
    scheme.validate();
    if (unlucky_schedule.empty() || unlucky_schedule.size() > t_prime ||
        unlucky_schedule.size() > scheme.v())
        throw validation_error("replay_luck_schedule: schedule must fit within t' and v slots");
    auto oa = construct::verify_orthogonal_array(scheme, t_prime, 1);
    if (!oa.pass)
        throw not_applicable_error("replay_luck_schedule: scheme is not a verified OA of strength t'");

    // Plan the eavesdrop channel per slot with an independent walk of the
    // update rules, then hand the channels to the real simulator.
    const unsigned m = scheme.m();
    std::vector<std::size_t> space(scheme.k());
    std::iota(space.begin(), space.end(), 0);
    std::vector<Channel> script;
    LuckReplay out;
    out.predicted.push_back(predicted_search_space(m, t_prime, 0, 0));
    unsigned unlucky_so_far = 0;
    for (std::size_t step = 0; step < unlucky_schedule.size(); ++step) {
        std::vector<std::uint64_t> mult(m, 0);
        for (std::size_t idx : space) ++mult[scheme.sequences[idx].values[step]];
        std::vector<bool> active_channel(m, false);
        for (std::size_t i : active_indices) active_channel[scheme.sequences[i].values[step]] = true;
        const bool want_unlucky = unlucky_schedule[step];
        Channel chosen = m;
        for (Channel c = 0; c < m; ++c) {
            if (mult[c] == 0) continue;
            if (want_unlucky != active_channel[c]) {
                chosen = c;
                break;
            }
        }
        if (chosen == m)
            throw not_applicable_error("replay_luck_schedule: step " + std::to_string(step) +
                                       " cannot be realized for this active set");
        script.push_back(chosen);
        std::vector<std::size_t> next;
        for (std::size_t idx : space) {
            const Channel ch = scheme.sequences[idx].values[step];
            if (want_unlucky ? ch != chosen : ch == chosen) next.push_back(idx);
        }
        space = std::move(next);
        if (want_unlucky) ++unlucky_so_far;
        out.predicted.push_back(
            predicted_search_space(m, t_prime, static_cast<unsigned>(step) + 1, unlucky_so_far));
    }

    SessionConfig session;
    session.active_indices = active_indices;
    session.victim_index = active_indices.front();
    JammerConfig config;
    config.strategy = Strategy::Scripted;
    config.scripted_channels = script;
    JammerTrace trace = run_session(scheme, session, config);

    out.simulated.push_back(trace.slots.empty() ? scheme.k() : trace.slots.front().search_before);
    for (std::size_t step = 0; step < unlucky_schedule.size(); ++step)
        out.simulated.push_back(trace.slots[step].search_after);
    out.agree = out.predicted == out.simulated;
    return out;
}

} // namespace fhs::jammer
