#pragma once

#include <cstdint>
#include <string_view>

namespace pbrs {

// Counter-based pseudo-random stream (SplitMix64: a Weyl sequence fed through
// a 64-bit finalizer). Identical seeds produce identical draw sequences on
// every platform. Named sub-streams derive statistically independent streams
// for (run, purpose) pairs; derive them before drawing from the parent.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    RngStream substream(std::string_view name) const;
    RngStream substream(std::uint64_t index) const;

    std::uint64_t next_u64();

    // Uniform in [0, 1), 53-bit resolution.
    double next_double();

    // Uniform in {0, ..., n-1}, unbiased (rejection sampling). n must be > 0.
    std::uint32_t next_below(std::uint32_t n);

    double uniform(double lo, double hi);

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace pbrs
