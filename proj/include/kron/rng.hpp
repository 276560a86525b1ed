#pragma once

#include <cstdint>

#include "kron/rational.hpp"

namespace kron {

// splitmix64: small, fast, and identical on every platform, so seeded suites
// reproduce byte-for-byte.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform integer in [lo, hi], rejection sampled
    long uniform(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return lo + static_cast<long>(v % span);
    }

    bool coin() { return (next_u64() & 1) != 0; }

    GaussianRational gaussian_integer(long lo, long hi) {
        return {Rational(uniform(lo, hi)), Rational(uniform(lo, hi))};
    }

    // child stream for batch b of a master seed; keeps parallel batches
    // scheduling-independent
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index) {
        Rng mix(master ^ (0xd1342543de82ef95ULL * (index + 1)));
        return mix.next_u64();
    }

  private:
    std::uint64_t state_;
};

}  // namespace kron
