#include "agentsched/resched/contract.hpp"

#include <algorithm>

namespace agentsched::resched {

bool validate_contract(const cloud::Reservation& reservation, const cloud::UserRequest& remaining,
                       const cloud::VmDescriptor& vm, double tau) {
    if (!cloud::capacity_fits(vm.capacity(), remaining.tasks)) {
        return false;
    }
    const double start = std::max(reservation.start, tau);
    return cloud::completion_from(start, vm.cpu, remaining.tasks) <= remaining.deadline;
}

bool validate_contract(const cloud::World& world, cloud::UserId user) {
    const auto* r = world.active_reservation(user);
    if (r == nullptr) {
        return false;
    }
    const auto remaining = world.remaining_request(user);
    // The world keeps reservation timings current, so the committed end is the
    // exact completion of the remaining work.
    return cloud::capacity_fits(world.vm(r->vm_id).capacity(), remaining.tasks) && r->end <= remaining.deadline;
}

}  // namespace agentsched::resched
