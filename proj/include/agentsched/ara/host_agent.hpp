#pragma once

#include <vector>

#include "agentsched/ara/messages.hpp"
#include "agentsched/cloud/world.hpp"

namespace agentsched::ara {

[[nodiscard]] inline bdi::AgentId host_agent_id(HostId host) { return {bdi::AgentKind::host, host}; }
[[nodiscard]] inline bdi::AgentId user_agent_id(UserId user) { return {bdi::AgentKind::user, user}; }

/// Owns the ground truth of one host's VMs: answers calls for proposals
/// against the real ledger, commits accepted contracts, and absorbs VM-side
/// disruptions locally when it can.
class HostAgent final : public AgentBase {
public:
    HostAgent(HostId host, cloud::World& world) : AgentBase(host_agent_id(host)), host_(host), world_(world) {}

    [[nodiscard]] HostId host() const noexcept { return host_; }

    /// Pushes the VM's new snapshot to the supervise agent.
    void vm_changed(VmId vm);

    /// Host branch of rescheduling: for each batch (ascending id) whose
    /// contract no longer holds, re-slot on the same VM or move to a sibling
    /// VM; tell the user when neither works.
    void absorb(std::vector<UserId> users);

    /// i1/i2 slot search and commit. Returns the committed quote if resolved.
    std::optional<cloud::Quote> reslot(UserId user, Reslot scope, VmId current);

protected:
    void handle(const Message& msg) override;

private:
    [[nodiscard]] bool owns(VmId vm) const noexcept { return vm.host == host_ && world_.datacenter().find(vm); }
    void on_cfp(const Message& msg, const CallForProposal& cfp);
    void on_accept(const Message& msg, const Proposal& p);
    void on_reslot(const Message& msg, const ReslotRequest& req);

    HostId host_;
    cloud::World& world_;
};

}  // namespace agentsched::ara
