#include "fhs/core.hpp"

#include <algorithm>
#include <map>

#include "fhs/errors.hpp"

namespace fhs {

void FrequencyLibrary::validate() const {
    if (m < 2) throw validation_error("FrequencyLibrary: m must be at least 2");
}

void Scheme::validate() const {
    library.validate();
    if (sequences.empty()) throw validation_error("Scheme: k must be at least 1");
    const std::size_t len = sequences.front().length();
    if (len == 0) throw validation_error("Scheme: sequence length must be at least 1");
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        if (sequences[i].length() != len)
            throw validation_error("Scheme: sequence " + std::to_string(i) + " has mismatched length");
        for (Channel c : sequences[i].values) {
            if (c >= library.m)
                throw validation_error("Scheme: sequence " + std::to_string(i) +
                                       " uses channel " + std::to_string(c) + " >= m");
        }
    }
}

std::vector<std::pair<std::size_t, std::size_t>> Scheme::find_duplicate_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::map<std::vector<Channel>, std::size_t> seen;
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        auto [it, inserted] = seen.emplace(sequences[i].values, i);
        if (!inserted) out.emplace_back(it->second, i);
    }
    return out;
}

unsigned hamming_correlation(const FHSequence& x, const FHSequence& y, std::size_t tau) {
    const std::size_t v = x.length();
    if (v == 0 || y.length() != v)
        throw validation_error("hamming_correlation: sequences must share a positive length");
    if (tau >= v) throw validation_error("hamming_correlation: shift out of range");
    unsigned count = 0;
    for (std::size_t i = 0; i < v; ++i) {
        std::size_t j = i + tau;
        if (j >= v) j -= v;
        if (x.values[i] == y.values[j]) ++count;
    }
    return count;
}

unsigned max_autocorrelation(const FHSequence& x) {
    const std::size_t v = x.length();
    if (v < 2) throw validation_error("max_autocorrelation: no out-of-phase shift exists for v < 2");
    unsigned best = 0;
    for (std::size_t tau = 1; tau < v; ++tau) best = std::max(best, hamming_correlation(x, x, tau));
    return best;
}

unsigned max_crosscorrelation(const FHSequence& x, const FHSequence& y) {
    const std::size_t v = x.length();
    if (v == 0 || y.length() != v)
        throw validation_error("max_crosscorrelation: sequences must share a positive length");
    unsigned best = 0;
    for (std::size_t tau = 0; tau < v; ++tau) best = std::max(best, hamming_correlation(x, y, tau));
    return best;
}

unsigned m_measure(const FHSequence& x, const FHSequence& y) {
    return std::max({max_autocorrelation(x), max_autocorrelation(y), max_crosscorrelation(x, y)});
}

CorrelationSummary correlation_summary(const Scheme& scheme) {
    scheme.validate();
    const std::size_t v = scheme.v();
    const std::size_t k = scheme.k();
    if (v < 2 && k < 2)
        throw validation_error("correlation_summary: neither H_a (v < 2) nor H_c (k < 2) is defined");

    CorrelationSummary out;
    out.has_duplicates = !scheme.find_duplicate_pairs().empty();

    if (v >= 2) {
        unsigned best = 0;
        AutocorrelationWitness witness{0, 1};
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t tau = 1; tau < v; ++tau) {
                unsigned h = hamming_correlation(scheme.sequences[i], scheme.sequences[i], tau);
                if (h > best || (i == 0 && tau == 1)) {
                    best = h;
                    witness = {i, tau};
                }
            }
        }
        out.autocorrelation_max = best;
        out.autocorrelation_witness = witness;
    }
    if (k >= 2) {
        unsigned best = 0;
        bool first = true;
        CrosscorrelationWitness witness{0, 1, 0};
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                for (std::size_t tau = 0; tau < v; ++tau) {
                    unsigned h = hamming_correlation(scheme.sequences[i], scheme.sequences[j], tau);
                    if (first || h > best) {
                        best = h;
                        witness = {i, j, tau};
                        first = false;
                    }
                }
            }
        }
        out.crosscorrelation_max = best;
        out.crosscorrelation_witness = witness;
    }
    out.overall_max = std::max(out.autocorrelation_max.value_or(0), out.crosscorrelation_max.value_or(0));
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % d == 0) return n == d;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t mod) -> std::uint64_t {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % mod);
    };
    auto powmod = [&](std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
        std::uint64_t out = 1;
        base %= mod;
        while (exp) {
            if (exp & 1) out = mulmod(out, base, mod);
            base = mulmod(base, base, mod);
            exp >>= 1;
        }
        return out;
    };
    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

BigInt clamped_ceil(const Rational& raw) {
    BigInt c = raw.ceil();
    return c.is_negative() ? BigInt(0) : c;
}

} // namespace

BoundReport lempel_greenberger_bound_1(std::uint64_t v, std::uint64_t m) {
    if (v < 2) throw validation_error("lempel_greenberger_bound_1: v must be at least 2");
    if (m < 1) throw validation_error("lempel_greenberger_bound_1: m must be at least 1");
    const std::uint64_t r = v % m;
    const BigInt bv = BigInt::from_uint64(v);
    const BigInt br = BigInt::from_uint64(r);
    const BigInt bm = BigInt::from_uint64(m);
    Rational raw((bv - br) * (bv + br - bm), bm * (bv - BigInt(1)));
    BoundReport out{BoundName::LempelGreenberger1, raw, clamped_ceil(raw), {}, std::nullopt};
    out.inputs.v = v;
    out.inputs.m = m;
    out.inputs.r = r;
    return out;
}

BoundReport lempel_greenberger_bound_2(std::uint64_t p, std::uint64_t n, std::uint64_t i) {
    if (!is_prime(p)) throw validation_error("lempel_greenberger_bound_2: p must be prime");
    if (n < 1 || i < 1 || i > n) throw validation_error("lempel_greenberger_bound_2: need 1 <= i <= n");
    const BigInt pn = BigInt::pow(BigInt::from_uint64(p), n);
    if (pn - BigInt(1) < BigInt(2))
        throw validation_error("lempel_greenberger_bound_2: v = p^n - 1 must be at least 2");
    Rational raw(BigInt::pow(BigInt::from_uint64(p), n - i), BigInt(1));
    BoundReport out{BoundName::LempelGreenberger2, raw, raw.ceil(), {}, std::nullopt};
    out.inputs.p = p;
    out.inputs.n = n;
    out.inputs.i = i;
    if ((pn - BigInt(1)).fits_uint64()) out.inputs.v = (pn - BigInt(1)).to_uint64();
    return out;
}

BoundReport peng_fan_bound(std::uint64_t v, std::uint64_t k, std::uint64_t m) {
    if (v < 1 || k < 1 || m < 1) throw validation_error("peng_fan_bound: v, k, m must be positive");
    const BigInt bv = BigInt::from_uint64(v);
    const BigInt bk = BigInt::from_uint64(k);
    const BigInt bm = BigInt::from_uint64(m);
    const BigInt vk = bv * bk;
    if (vk == BigInt(1)) throw validation_error("peng_fan_bound: vk must exceed 1");
    const BigInt capital_i = vk / bm;
    Rational raw(BigInt(2) * capital_i * vk - (capital_i + BigInt(1)) * capital_i * bm,
                 (vk - BigInt(1)) * bk);
    BoundReport out{BoundName::PengFan, raw, clamped_ceil(raw), {}, std::nullopt};
    out.inputs.v = v;
    out.inputs.k = k;
    out.inputs.m = m;
    if (capital_i.fits_uint64()) out.inputs.capital_i = capital_i.to_uint64();
    return out;
}

void compare_bound(BoundReport& report, std::uint64_t measured) {
    report.is_met_with_equality = (report.integer_bound == BigInt::from_uint64(measured));
}

SlotOccupancy slot_occupancy(const Scheme& scheme, std::size_t t, const std::vector<std::size_t>* active) {
    scheme.validate();
    if (t >= scheme.v()) throw validation_error("slot_occupancy: slot index out of range");
    SlotOccupancy out;
    out.slot = t;
    out.multiplicity.assign(scheme.m(), 0);
    for (const auto& seq : scheme.sequences) ++out.multiplicity[seq.at(t)];
    if (active != nullptr) {
        std::vector<unsigned> act(scheme.m(), 0);
        std::vector<bool> seen(scheme.k(), false);
        for (std::size_t idx : *active) {
            if (idx >= scheme.k()) throw validation_error("slot_occupancy: active index out of range");
            if (seen[idx]) throw validation_error("slot_occupancy: duplicate active index");
            seen[idx] = true;
            ++act[scheme.sequences[idx].at(t)];
        }
        out.active_multiplicity = std::move(act);
    }
    return out;
}

std::vector<bool> check_slot_uniformity(const Scheme& scheme) {
    scheme.validate();
    std::vector<bool> out(scheme.v(), false);
    std::vector<unsigned> counts(scheme.m());
    for (std::size_t t = 0; t < scheme.v(); ++t) {
        std::fill(counts.begin(), counts.end(), 0u);
        for (const auto& seq : scheme.sequences) ++counts[seq.at(t)];
        out[t] = std::all_of(counts.begin(), counts.end(),
                             [&](unsigned c) { return c == counts[0]; });
    }
    return out;
}

bool TransitionUniformity::all_uniform_or_vacuous() const {
    for (const auto& row : table) {
        for (TransitionStatus s : row) {
            if (s == TransitionStatus::NonUniform) return false;
        }
    }
    return true;
}

std::size_t TransitionUniformity::vacuous_count() const {
    std::size_t n = 0;
    for (const auto& row : table) {
        for (TransitionStatus s : row) {
            if (s == TransitionStatus::Vacuous) ++n;
        }
    }
    return n;
}

std::optional<std::pair<std::size_t, Channel>> TransitionUniformity::first_non_uniform() const {
    for (std::size_t t = 0; t < table.size(); ++t) {
        for (std::size_t i = 0; i < table[t].size(); ++i) {
            if (table[t][i] == TransitionStatus::NonUniform) return std::make_pair(t, static_cast<Channel>(i));
        }
    }
    return std::nullopt;
}

TransitionUniformity check_transition_uniformity(const Scheme& scheme) {
    scheme.validate();
    if (scheme.v() < 2) throw validation_error("check_transition_uniformity: v must be at least 2");
    const unsigned m = scheme.m();
    TransitionUniformity out;
    out.table.assign(scheme.v() - 1, std::vector<TransitionStatus>(m, TransitionStatus::Vacuous));
    std::vector<unsigned> next_counts(m);
    for (std::size_t t = 0; t + 1 < scheme.v(); ++t) {
        for (unsigned i = 0; i < m; ++i) {
            std::fill(next_counts.begin(), next_counts.end(), 0u);
            unsigned total = 0;
            for (const auto& seq : scheme.sequences) {
                if (seq.at(t) == i) {
                    ++next_counts[seq.at(t + 1)];
                    ++total;
                }
            }
            if (total == 0) {
                out.table[t][i] = TransitionStatus::Vacuous;
            } else {
                bool uniform = std::all_of(next_counts.begin(), next_counts.end(),
                                           [&](unsigned c) { return c == next_counts[0]; });
                out.table[t][i] = uniform ? TransitionStatus::Uniform : TransitionStatus::NonUniform;
            }
        }
    }
    return out;
}

} // namespace fhs
