#ifndef FHS_COMBINATORICS_HPP
#define FHS_COMBINATORICS_HPP

#include <cstdint>
#include <vector>

#include "fhs/bigint.hpp"
#include "fhs/rng.hpp"

namespace fhs {

// C(n, r) exactly; 0 when r > n.
BigInt binomial(std::uint64_t n, std::uint64_t r);

// C(n, r) clamped to `cap` (returns cap + 1 as soon as the count is known to
// exceed it). Used for budget checks without big arithmetic.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t r, std::uint64_t cap);

// Lexicographic enumeration of r-subsets of {0..n-1}.
class CombinationCursor {
  public:
    CombinationCursor(std::size_t n, std::size_t r);                       // first combination
    CombinationCursor(std::size_t n, std::size_t r, std::uint64_t rank);   // unranked start

    const std::vector<std::size_t>& indices() const { return indices_; }
    bool advance(); // false once past the last combination

  private:
    std::size_t n_;
    std::vector<std::size_t> indices_;
};

// Uniform random r-subset of {0..n-1}, returned sorted (Floyd's algorithm).
std::vector<std::size_t> sample_combination(SplitMix64& rng, std::size_t n, std::size_t r);

} // namespace fhs

#endif
