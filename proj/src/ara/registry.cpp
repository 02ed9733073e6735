#include "agentsched/ara/registry.hpp"

#include <algorithm>
#include <stdexcept>

namespace agentsched::ara {

void VmRegistry::sync_vm(HostId host, const VmSnapshot& snapshot) {
    auto it = entries_.find(snapshot.vm);
    if (it == entries_.end()) {
        entries_.emplace(snapshot.vm, RegistryEntry{host, snapshot, {}, 0});
        index_.emplace(snapshot.available, snapshot.vm);
        return;
    }
    index_.erase({it->second.snapshot.available, snapshot.vm});
    it->second.host = host;
    it->second.snapshot = snapshot;
    index_.emplace(snapshot.available, snapshot.vm);
}

std::vector<VmRef> VmRegistry::recommend(const cloud::UserRequest& req, int theta, double tau,
                                         bdi::ConversationId conversation) {
    if (theta < 1) {
        throw std::invalid_argument("theta must be at least 1");
    }
    if (outstanding_.contains(conversation)) {
        throw std::logic_error("recommendation conversation reused");
    }
    std::vector<VmRef> picked;
    std::vector<VmId> leased;
    for (const auto& [available, id] : index_) {
        if (static_cast<int>(picked.size()) >= theta) {
            break;
        }
        auto& e = entries_.at(id);
        if (e.lease.state != cloud::LeaseStatus::ready) {
            continue;
        }
        const auto& s = e.snapshot;
        const cloud::Capacity cap{s.cpu, s.ram, s.storage, s.bandwidth};
        if (!cloud::capacity_fits(cap, req.tasks)) {
            continue;
        }
        if (cloud::completion_from(std::max(tau, s.available), s.cpu, req.tasks) > req.deadline) {
            continue;
        }
        e.lease = cloud::LeaseState{cloud::LeaseStatus::busy, req.user_id, tau};
        e.conversation = conversation;
        picked.push_back(VmRef{e.host, s});
        leased.push_back(id);
    }
    if (!leased.empty()) {
        outstanding_.emplace(conversation, std::move(leased));
    }
    return picked;
}

std::vector<VmId> VmRegistry::finalize(bdi::ConversationId conversation) {
    auto it = outstanding_.find(conversation);
    if (it == outstanding_.end()) {
        return {};
    }
    auto released = std::move(it->second);
    outstanding_.erase(it);
    for (VmId id : released) {
        auto& e = entries_.at(id);
        e.lease = cloud::LeaseState{};
        e.conversation = 0;
    }
    return released;
}

bool VmRegistry::any_capacity_fit(const cloud::UserRequest& req) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& kv) {
        const auto& s = kv.second.snapshot;
        return cloud::capacity_fits(cloud::Capacity{s.cpu, s.ram, s.storage, s.bandwidth}, req.tasks);
    });
}

const RegistryEntry* VmRegistry::entry(VmId vm) const {
    auto it = entries_.find(vm);
    return it == entries_.end() ? nullptr : &it->second;
}

std::size_t VmRegistry::ready_count() const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](const auto& kv) {
        return kv.second.lease.state == cloud::LeaseStatus::ready;
    }));
}

std::vector<VmId> VmRegistry::priority_order() const {
    std::vector<VmId> order;
    order.reserve(index_.size());
    for (const auto& [_, id] : index_) {
        order.push_back(id);
    }
    return order;
}

}  // namespace agentsched::ara
