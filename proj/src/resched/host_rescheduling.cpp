#include "agentsched/resched/host_rescheduling.hpp"

namespace agentsched::resched {

std::optional<cloud::Quote> same_vm_slot(const cloud::World& world, cloud::UserId user, cloud::VmId vm) {
    if (world.datacenter().find(vm) == nullptr) {
        return std::nullopt;
    }
    const auto q = world.quote(user, vm, cloud::Placement::earliest_fit);
    if (!world.acceptable(user, q)) {
        return std::nullopt;
    }
    return q;
}

std::optional<cloud::Quote> best_sibling(const cloud::World& world, cloud::UserId user, cloud::VmId current) {
    std::optional<cloud::Quote> best;
    for (const auto& host : world.datacenter().hosts) {
        if (host.host_id != current.host) {
            continue;
        }
        for (const auto& v : host.vms) {
            if (v.vm_id == current) {
                continue;
            }
            const auto q = world.quote(user, v.vm_id, cloud::Placement::append);
            if (!world.acceptable(user, q)) {
                continue;
            }
            if (!best || q.completion < best->completion ||
                (q.completion == best->completion && q.vm < best->vm)) {
                best = q;
            }
        }
    }
    return best;
}

}  // namespace agentsched::resched
