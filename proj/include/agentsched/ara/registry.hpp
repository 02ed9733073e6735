#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "agentsched/ara/messages.hpp"

namespace agentsched::ara {

struct RegistryEntry {
    HostId host = 0;
    VmSnapshot snapshot;
    cloud::LeaseState lease;
    bdi::ConversationId conversation = 0;  // recommendation holding the lease
};

/// The supervise agent's view of every VM: snapshots synced by hosts, a
/// priority index by available time, and READY/BUSY leases.
class VmRegistry {
public:
    /// Replaces the snapshot (creating a READY entry on first sync); the lease
    /// is left untouched.
    void sync_vm(HostId host, const VmSnapshot& snapshot);

    /// Scans VMs by ascending available time (ties by vm id) and leases up to
    /// `theta` READY VMs that are feasible for `req` at `tau` according to
    /// their snapshots.
    std::vector<VmRef> recommend(const cloud::UserRequest& req, int theta, double tau,
                                 bdi::ConversationId conversation);

    /// Returns every VM leased under `conversation` to READY. Returns the
    /// released VMs; empty if the conversation is unknown or already closed.
    std::vector<VmId> finalize(bdi::ConversationId conversation);

    /// True if some VM's snapshot can hold the batch's resource peaks.
    [[nodiscard]] bool any_capacity_fit(const cloud::UserRequest& req) const;

    [[nodiscard]] bool outstanding(bdi::ConversationId conversation) const {
        return outstanding_.contains(conversation);
    }
    [[nodiscard]] const RegistryEntry* entry(VmId vm) const;
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] std::size_t ready_count() const;
    /// All VMs in priority order.
    [[nodiscard]] std::vector<VmId> priority_order() const;

private:
    std::map<VmId, RegistryEntry> entries_;
    std::set<std::pair<double, VmId>> index_;
    std::map<bdi::ConversationId, std::vector<VmId>> outstanding_;
};

}  // namespace agentsched::ara
