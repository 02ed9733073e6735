#pragma once

#include <optional>
#include <string_view>

#include "agentsched/cloud/model.hpp"

namespace agentsched::resched {

/// Rescheduling plans in priority order.
enum class Step : std::uint8_t { i1, i2, i3 };

[[nodiscard]] std::string_view to_string(Step step) noexcept;
[[nodiscard]] std::optional<Step> step_from_name(std::string_view name) noexcept;

/// One user's attempt to repair an invalid contract.
struct RescheduleCycle {
    cloud::UserId user = 0;
    std::optional<int> event_id;  // unset when triggered by a host notice
    Step current = Step::i1;
    int attempts = 0;             // intentions started
    int passes = 0;               // completed i1..i3 passes without resolution
    bool skip_local_first_pass = false;  // host already tried i2 for this trigger
};

}  // namespace agentsched::resched
