#ifndef SUMSQ_RNG_HPP
#define SUMSQ_RNG_HPP

#include <cstdint>

#include "sumsq/rational.hpp"

namespace sumsq {

// Counter-based generator: output i of stream (seed, stream_id) is a pure
// function of (seed, stream_id, i), so parallel trials are reproducible
// regardless of scheduling. The mixer is the splitmix64 finalizer.
class CounterRng {
  public:
    CounterRng() : key_(mix(0x9E3779B97F4A7C15ULL)) {}
    CounterRng(std::uint64_t seed, std::uint64_t stream_id)
        : key_(mix(mix(seed + 0x9E3779B97F4A7C15ULL) ^
                   mix(stream_id + 0xBF58476D1CE4E5B9ULL))) {}

    // Derives an independent substream, e.g. per trial or per purpose.
    CounterRng split(std::uint64_t stream_id) const {
        return CounterRng(key_, stream_id);
    }

    std::uint64_t next() { return mix(key_ + counter_++ * 0x9E3779B97F4A7C15ULL); }

    // True with probability p (0 <= p <= 1), rounded to 1/2^64 resolution.
    bool bernoulli(const Rational& p) { return next() < threshold(p); }

    // Uniform integer in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // floor(p * 2^64), saturating at 2^64-1 so bernoulli(1) is almost surely
    // true; callers that need exact certainty should test p == 1 themselves.
    static std::uint64_t threshold(const Rational& p) {
        if (p <= 0) return 0;
        if (p >= 1) return ~0ULL;
        Integer scaled = (p.get_num() << 64) / p.get_den();
        std::uint64_t lo = scaled.get_ui();
        Integer hi = scaled >> 64;
        return hi == 0 ? lo : ~0ULL;
    }

  private:
    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ULL;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBULL;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace sumsq

#endif
