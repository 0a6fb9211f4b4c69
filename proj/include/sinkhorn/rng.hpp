#pragma once

#include <cstdint>

namespace sinkhorn {

/// splitmix64: tiny deterministic generator, identical across platforms.
/// Used for seeded example sampling so reports are byte-reproducible.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound); bound must be nonzero. The modulo bias is
    /// negligible for the small bounds used here and keeps results portable.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

} // namespace sinkhorn
