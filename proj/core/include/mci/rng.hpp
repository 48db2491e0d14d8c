#ifndef MCI_RNG_HPP
#define MCI_RNG_HPP

#include <cstdint>

namespace mci::rng {

// SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
// generators", OOPSLA 2014; the java.util.SplittableRandom mixer). This is
// the single pseudo-random algorithm used in this repository: fold shuffles,
// binomial draws and Gaussian perturbations all derive from it, so committed
// golden files stay valid independent of the standard library in use.

inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

// Finalizer of SplitMix64; also usable as a 64-bit hash.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class splitmix64 {
public:
    explicit constexpr splitmix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += golden_gamma;
        return mix64(state_);
    }

    // Uniform double in the open interval (0, 1): 53 random bits shifted to
    // the midpoints of the 2^53 subintervals, so neither endpoint occurs.
    double next_unit() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n) by rejection of the top bias region.
    std::uint64_t next_below(std::uint64_t n) noexcept {
        const std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

private:
    std::uint64_t state_;
};

// Independent stream for (seed, index): the initial state is the hash of the
// pair, so streams for distinct trial indices are unrelated rather than
// shifted copies of one another. The trial schedule therefore cannot affect
// what any single trial draws.
inline splitmix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(mix64(mix64(seed ^ 0x6A09E667F3BCC909ULL) + index));
}

} // namespace mci::rng

#endif // MCI_RNG_HPP
