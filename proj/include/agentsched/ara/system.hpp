#pragma once

#include <map>
#include <memory>

#include "agentsched/ara/host_agent.hpp"
#include "agentsched/ara/params.hpp"
#include "agentsched/ara/supervise_agent.hpp"
#include "agentsched/ara/user_agent.hpp"
#include "agentsched/resched/events.hpp"

namespace agentsched::ara {

/// Wires one supervise agent, one host agent per host and one user agent per
/// batch onto a world. Users are released at their arrival times.
class System final : public cloud::WorldObserver, public resched::EventReactor {
public:
    System(cloud::World& world, double latency, const AraParams& params, sim::TraceLog* trace = nullptr);
    System(const System&) = delete;
    System& operator=(const System&) = delete;
    ~System() override;

    /// Seeds the registry with every VM and schedules arrivals.
    void start();

    [[nodiscard]] Platform& platform() noexcept { return platform_; }
    [[nodiscard]] const SuperviseAgent& supervise() const noexcept { return *supervise_; }
    [[nodiscard]] HostAgent& host(HostId id) { return *hosts_.at(id); }
    [[nodiscard]] UserAgent& user(UserId id) { return *users_.at(id); }

    void vm_changed(VmId vm) override;
    void batch_terminal(UserId user) override;

    void on_user_event(const resched::UncertainEvent& e, const cloud::MutationResult& result) override;
    void on_vm_event(const resched::UncertainEvent& e, const cloud::MutationResult& result) override;

private:
    cloud::World& world_;
    AraParams params_;
    Platform platform_;
    std::unique_ptr<SuperviseAgent> supervise_;
    std::map<HostId, std::unique_ptr<HostAgent>> hosts_;
    std::map<UserId, std::unique_ptr<UserAgent>> users_;
};

}  // namespace agentsched::ara
