#pragma once

#include <optional>

#include "agentsched/cloud/world.hpp"

namespace agentsched::resched {

/// Intention i1 on the host side: the earliest slot on `vm` (gaps included)
/// that holds the user's remaining work and meets the deadline.
[[nodiscard]] std::optional<cloud::Quote> same_vm_slot(const cloud::World& world, cloud::UserId user,
                                                       cloud::VmId vm);

/// Intention i2 on the host side: among the other VMs of `current`'s host,
/// the acceptable quote with the earliest completion (ties: lower vm id).
[[nodiscard]] std::optional<cloud::Quote> best_sibling(const cloud::World& world, cloud::UserId user,
                                                       cloud::VmId current);

}  // namespace agentsched::resched
