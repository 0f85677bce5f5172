#include "fhs/combinatorics.hpp"

#include <algorithm>

#include "fhs/errors.hpp"

namespace fhs {

BigInt binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return BigInt(0);
    if (r > n - r) r = n - r;
    BigInt out(1);
    for (std::uint64_t i = 0; i < r; ++i) {
        out *= BigInt::from_uint64(n - i);
        out = out / BigInt::from_uint64(i + 1); // exact at every step
    }
    return out;
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t r, std::uint64_t cap) {
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    // Multiply/divide in exact steps; bail out once above cap.
    BigInt out(1);
    const BigInt big_cap = BigInt::from_uint64(cap);
    for (std::uint64_t i = 0; i < r; ++i) {
        out *= BigInt::from_uint64(n - i);
        out = out / BigInt::from_uint64(i + 1);
        if (out > big_cap) return cap == UINT64_MAX ? UINT64_MAX : cap + 1;
    }
    return out.to_uint64();
}

CombinationCursor::CombinationCursor(std::size_t n, std::size_t r) : n_(n) {
    if (r > n) throw validation_error("CombinationCursor: r > n");
    indices_.resize(r);
    for (std::size_t i = 0; i < r; ++i) indices_[i] = i;
}

CombinationCursor::CombinationCursor(std::size_t n, std::size_t r, std::uint64_t rank) : n_(n) {
    if (r > n) throw validation_error("CombinationCursor: r > n");
    indices_.resize(r);
    // Standard combinadic unranking in lexicographic order.
    std::size_t next = 0;
    for (std::size_t pos = 0; pos < r; ++pos) {
        for (std::size_t candidate = next;; ++candidate) {
            if (candidate >= n) throw validation_error("CombinationCursor: rank out of range");
            std::uint64_t block = binomial_capped(n - candidate - 1, r - pos - 1, UINT64_MAX - 1);
            if (rank < block) {
                indices_[pos] = candidate;
                next = candidate + 1;
                break;
            }
            rank -= block;
        }
    }
}

bool CombinationCursor::advance() {
    const std::size_t r = indices_.size();
    if (r == 0) return false;
    std::size_t i = r;
    while (i-- > 0) {
        if (indices_[i] != i + n_ - r) {
            ++indices_[i];
            for (std::size_t j = i + 1; j < r; ++j) indices_[j] = indices_[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> sample_combination(SplitMix64& rng, std::size_t n, std::size_t r) {
    if (r > n) throw validation_error("sample_combination: r > n");
    // Floyd's algorithm with a membership bitmap.
    std::vector<char> present(n, 0);
    std::vector<std::size_t> chosen;
    chosen.reserve(r);
    for (std::size_t j = n - r; j < n; ++j) {
        std::size_t t = static_cast<std::size_t>(rng.bounded(j + 1));
        if (present[t]) t = j;
        present[t] = 1;
        chosen.push_back(t);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

} // namespace fhs
