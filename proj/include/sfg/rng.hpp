#ifndef SFG_RNG_HPP
#define SFG_RNG_HPP

#include <cstdint>

namespace sfg {

/*
 * SplitMix64: the 64-bit generator of Steele, Lea and Flood, used for
 * every randomized piece of this library. Trial streams are derived
 * by trial_stream(seed, index), so a batch of trials gives the same
 * results no matter how the trials are scheduled.
 */
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound).
    uint64_t next_below(uint64_t bound) { return next() % bound; }

private:
    uint64_t state_;
};

inline SplitMix64 trial_stream(uint64_t seed, uint64_t trial_index) {
    SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ULL * (trial_index + 1)));
    return SplitMix64(mixer.next());
}

} // namespace sfg

#endif
