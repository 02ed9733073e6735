#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace agentsched::sim {

/// Independent random streams. Changing how many draws one stream makes never
/// perturbs another.
enum class Stream : std::uint64_t {
    scenario = 1,
    events = 2,
    tie_break = 3,
};

[[nodiscard]] std::string_view to_string(Stream stream) noexcept;

/// Seeded stream with platform-independent draw helpers. std::mt19937_64 output
/// is fixed by the standard but the std:: distributions are not, so the
/// mapping to ranges is done here.
class RngStream {
public:
    RngStream(std::uint64_t seed, Stream stream);

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] Stream stream() const noexcept { return stream_; }

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double uniform01();
    /// Uniform on [lo, hi); returns lo when lo == hi.
    double uniform(double lo, double hi);
    /// Uniform on the closed integer range [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    bool bernoulli(double p);

private:
    std::uint64_t seed_;
    Stream stream_;
    std::mt19937_64 engine_;
};

}  // namespace agentsched::sim
