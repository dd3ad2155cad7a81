#include "pbrs/rng.hpp"

#include <stdexcept>

namespace pbrs {

namespace {

constexpr std::uint64_t kWeylIncrement = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

RngStream RngStream::substream(std::string_view name) const {
    return RngStream(mix64(state_ ^ fnv1a(name)));
}

RngStream RngStream::substream(std::uint64_t index) const {
    return RngStream(mix64(state_ + kWeylIncrement * (index + 1)));
}

std::uint64_t RngStream::next_u64() {
    state_ += kWeylIncrement;
    return mix64(state_);
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint32_t RngStream::next_below(std::uint32_t n) {
    if (n == 0) throw std::invalid_argument("RngStream::next_below: n must be > 0");
    const std::uint64_t limit = (~std::uint64_t{0} / n) * n;
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x < limit) return static_cast<std::uint32_t>(x % n);
    }
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

}  // namespace pbrs
