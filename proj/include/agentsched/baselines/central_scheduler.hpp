#pragma once

#include <cstddef>
#include <vector>

#include "agentsched/baselines/allocators.hpp"
#include "agentsched/cloud/world.hpp"
#include "agentsched/resched/events.hpp"

namespace agentsched::baselines {

/// Time a central scheduler spends re-planning after an event.
struct ResponseCostModel {
    bool enabled = true;
    double per_pair_cost = 0.0005;  // s per (affected batch x VM) evaluation

    [[nodiscard]] double delay(std::size_t affected, std::size_t vms) const noexcept {
        return enabled ? per_pair_cost * static_cast<double>(affected) * static_cast<double>(vms) : 0.0;
    }
};

[[nodiscard]] std::vector<VmSlotView> slot_views(const cloud::World& world);

/// Centralised, zero-latency scheduler: places each batch at its arrival and
/// re-places affected batches after events, once the modelled computation
/// delay has elapsed. Re-planning jobs are served one at a time.
class CentralScheduler final : public resched::EventReactor {
public:
    CentralScheduler(cloud::World& world, Kind kind, const ResponseCostModel& cost, sim::TraceLog* trace = nullptr);

    /// Schedules the arrivals.
    void start();

    /// Places the given batches now, releasing any reservation they hold.
    void place(std::vector<UserId> users);

    /// Re-places `affected` after cost.delay(|affected|, NV), queued behind
    /// any re-planning already in progress. Returns the commit time.
    double reactive_realloc(std::vector<UserId> affected);

    void on_user_event(const resched::UncertainEvent& e, const cloud::MutationResult& result) override;
    void on_vm_event(const resched::UncertainEvent& e, const cloud::MutationResult& result) override;

    [[nodiscard]] std::size_t reallocations() const noexcept { return reallocations_; }

private:
    std::vector<UserId> invalid_shifted(const cloud::MutationResult& result) const;

    cloud::World& world_;
    Kind kind_;
    ResponseCostModel cost_;
    sim::TraceLog* trace_;
    RoundRobin round_robin_;
    double busy_until_ = 0.0;
    std::size_t reallocations_ = 0;
};

}  // namespace agentsched::baselines
