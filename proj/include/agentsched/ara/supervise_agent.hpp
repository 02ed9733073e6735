#pragma once

#include <map>

#include "agentsched/ara/messages.hpp"
#include "agentsched/ara/params.hpp"
#include "agentsched/ara/registry.hpp"

namespace agentsched::ara {

inline constexpr bdi::AgentId supervise_id{bdi::AgentKind::supervise, 0};

class SuperviseAgent final : public AgentBase {
public:
    explicit SuperviseAgent(const AraParams& params) : AgentBase(supervise_id), params_(params) {}

    /// Initial registration of a VM before the run starts.
    void seed(HostId host, const VmSnapshot& snapshot) { registry_.sync_vm(host, snapshot); }

    [[nodiscard]] const VmRegistry& registry() const noexcept { return registry_; }
    [[nodiscard]] std::size_t leases_expired() const noexcept { return expired_; }

protected:
    void handle(const Message& msg) override;

private:
    void release(bdi::ConversationId conversation, const char* reason);

    AraParams params_;
    VmRegistry registry_;
    std::map<bdi::ConversationId, sim::EntryId> lease_timers_;
    std::size_t expired_ = 0;
};

}  // namespace agentsched::ara
