#ifndef FHS_TESTS_FIXTURES_HPP
#define FHS_TESTS_FIXTURES_HPP

#include <vector>

#include "fhs/core.hpp"
#include "fhs/rng.hpp"

namespace fhs::test {

// The 9-sequence strength-2 scheme over 3 channels used throughout the unit
// tests, renumbered to 0-based channels.
inline Scheme nine_sequence_scheme() {
    Scheme scheme;
    scheme.library.m = 3;
    const std::vector<std::vector<Channel>> rows = {
        {0, 0, 1}, {0, 1, 0}, {0, 2, 2}, {1, 0, 0}, {1, 1, 2},
        {1, 2, 1}, {2, 0, 2}, {2, 1, 1}, {2, 2, 0},
    };
    for (const auto& row : rows) scheme.sequences.emplace_back(row);
    scheme.label = "nine-sequence fixture (channels renumbered 1..3 -> 0..2)";
    return scheme;
}

inline Scheme make_scheme(unsigned m, const std::vector<std::vector<Channel>>& rows) {
    Scheme scheme;
    scheme.library.m = m;
    for (const auto& row : rows) scheme.sequences.emplace_back(row);
    scheme.label = "test scheme";
    return scheme;
}

inline FHSequence random_sequence(SplitMix64& rng, std::size_t v, unsigned m) {
    FHSequence seq;
    seq.values.reserve(v);
    for (std::size_t t = 0; t < v; ++t) seq.values.push_back(static_cast<Channel>(rng.bounded(m)));
    return seq;
}

inline Scheme random_scheme(SplitMix64& rng, std::size_t k, std::size_t v, unsigned m) {
    Scheme scheme;
    scheme.library.m = m;
    for (std::size_t i = 0; i < k; ++i) scheme.sequences.push_back(random_sequence(rng, v, m));
    scheme.label = "random";
    return scheme;
}

} // namespace fhs::test

#endif
