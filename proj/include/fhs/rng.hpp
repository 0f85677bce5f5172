#ifndef FHS_RNG_HPP
#define FHS_RNG_HPP

#include <cstdint>

namespace fhs {

// 64-bit avalanche finalizer (splitmix64 finalization step).
inline std::uint64_t fmix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ull;

// Deterministic stream generator used everywhere randomness is needed.
// std engines/distributions are avoided on purpose: their output is not
// pinned across standard library implementations, and reports must be
// byte-identical across reruns.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGolden64;
        return fmix64(state_);
    }

    // Uniform draw in [0, n) by rejection below the largest multiple of n.
    std::uint64_t bounded(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t rem = (0 - n) % n; // 2^64 mod n
        for (;;) {
            const std::uint64_t x = next();
            if (x >= rem) return x % n;
        }
    }

    double unit_double() { // [0,1), 53-bit resolution
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// Independent child stream: used so that per-trial / per-sample streams do
// not depend on how work is split across threads.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return fmix64((master ^ 0x6A09E667F3BCC909ull) + (index + 1) * kGolden64);
}

} // namespace fhs

#endif
