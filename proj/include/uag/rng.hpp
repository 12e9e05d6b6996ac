// Reproducible randomness: every trial derives its generator from (seed, stream),
// so runs replay identically regardless of execution order or thread count.
#pragma once

#include <cstdint>
#include <random>

namespace uag {

struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Splittable counter construction: the stream index is folded into the seed
// before expansion, so distinct streams give unrelated engines.
inline std::mt19937_64 make_engine(const RngSpec& spec) {
    std::uint64_t s = spec.seed;
    std::uint64_t a = splitmix64_next(s);
    s ^= 0xD1B54A32D192ED03ull * (spec.stream + 1);
    std::uint64_t b = splitmix64_next(s);
    std::uint64_t c = splitmix64_next(s);
    std::uint64_t d = splitmix64_next(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                      static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
    return std::mt19937_64(seq);
}

// Unbiased draw in [0, bound), independent of the standard library's
// distribution internals (std::uniform_int_distribution is not portable
// across implementations, which would break byte-identical replay).
inline std::uint64_t bounded_u64(std::mt19937_64& eng, std::uint64_t bound) {
    const std::uint64_t threshold = (-bound) % bound;  // 2^64 mod bound
    for (;;) {
        std::uint64_t r = eng();
        if (r >= threshold) return r % bound;
    }
}

// Uniform vertex choice in [1, upper].
inline int uniform_vertex(std::mt19937_64& eng, int upper) {
    return 1 + static_cast<int>(bounded_u64(eng, static_cast<std::uint64_t>(upper)));
}

}  // namespace uag
