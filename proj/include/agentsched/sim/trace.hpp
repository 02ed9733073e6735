#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>

#include <json.hpp>

namespace agentsched::sim {

/// JSON-lines trace sink. One record per line: {"t", "agent", "kind", "detail"}.
/// Disabled when constructed without a stream; callers should test enabled()
/// before building expensive detail objects.
class TraceLog {
public:
    TraceLog() = default;
    explicit TraceLog(std::ostream* out) : out_(out) {}

    [[nodiscard]] bool enabled() const noexcept { return out_ != nullptr; }
    void emit(double t, std::string_view agent, std::string_view kind, const nlohmann::json& detail);
    [[nodiscard]] std::uint64_t records() const noexcept { return records_; }

private:
    std::ostream* out_ = nullptr;
    std::uint64_t records_ = 0;
};

}  // namespace agentsched::sim
