#pragma once

#include <span>

#include "agentsched/ara/messages.hpp"

namespace agentsched::ara {

/// Earliest completion wins; ties go to the lower vm id. Throws
/// std::invalid_argument on an empty list.
[[nodiscard]] const Proposal& select_best(std::span<const Proposal> proposals);

}  // namespace agentsched::ara
