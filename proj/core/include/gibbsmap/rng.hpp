#ifndef GIBBSMAP_RNG_HPP
#define GIBBSMAP_RNG_HPP

#include <cstdint>
#include <random>

namespace gibbsmap {

// Seeded random stream. Identical (seed, stream_id) pairs reproduce identical
// draw sequences; independent chains use distinct stream ids on one seed.
// Doubles are built from raw engine words rather than std::uniform_real_
// distribution, so the sequence does not depend on the standard library.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream_id),
                          static_cast<std::uint32_t>(stream_id >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on the open interval (0, 1); safe to pass to log().
    double open01() {
        return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Unbiased integer in [0, n); n >= 1. Rejection sampling on the top range.
    std::size_t uniform_index(std::size_t n) {
        const std::uint64_t span = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % span);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace gibbsmap

#endif // GIBBSMAP_RNG_HPP
