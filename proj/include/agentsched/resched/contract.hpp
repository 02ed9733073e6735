#pragma once

#include "agentsched/cloud/world.hpp"

namespace agentsched::resched {

/// Does the contract still hold? The remaining work, started at
/// max(reservation.start, tau) on the VM as it is now, must fit the VM's
/// capacities and finish by the request's (current) deadline.
[[nodiscard]] bool validate_contract(const cloud::Reservation& reservation, const cloud::UserRequest& remaining,
                                     const cloud::VmDescriptor& vm, double tau);

/// Ground-truth form: false if the batch holds no active reservation.
[[nodiscard]] bool validate_contract(const cloud::World& world, cloud::UserId user);

}  // namespace agentsched::resched
