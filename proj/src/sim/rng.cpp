#include "agentsched/sim/rng.hpp"

#include <limits>
#include <stdexcept>

namespace agentsched::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(Stream stream) noexcept {
    switch (stream) {
        case Stream::scenario: return "scenario";
        case Stream::events: return "events";
        case Stream::tie_break: return "tie-break";
    }
    return "unknown";
}

RngStream::RngStream(std::uint64_t seed, Stream stream)
    : seed_(seed), stream_(stream),
      engine_(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream)))) {}

std::uint64_t RngStream::next_u64() {
    return engine_();
}

double RngStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    if (hi < lo) {
        throw std::invalid_argument("RngStream::uniform: empty range");
    }
    return lo + (hi - lo) * uniform01();
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) {
        throw std::invalid_argument("RngStream::uniform_int: empty range");
    }
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) {
        return static_cast<std::int64_t>(engine_());
    }
    const std::uint64_t range = span + 1;
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return lo + static_cast<std::int64_t>(x % range);
}

bool RngStream::bernoulli(double p) {
    // Always consumes one draw so stream positions do not depend on p.
    return uniform01() < p;
}

}  // namespace agentsched::sim
