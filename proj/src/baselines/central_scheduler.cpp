#include "agentsched/baselines/central_scheduler.hpp"

#include <algorithm>

#include "agentsched/resched/contract.hpp"

namespace agentsched::baselines {

std::vector<VmSlotView> slot_views(const cloud::World& world) {
    std::vector<VmSlotView> views;
    for (VmId id : world.vm_ids()) {
        const auto& v = world.vm(id);
        VmSlotView s{id, v.cpu, v.ram, v.storage, v.bandwidth, 0.0};
        for (const auto& r : v.reservations) {
            if (r.active) {
                s.tail = std::max(s.tail, r.end);
            }
        }
        views.push_back(s);
    }
    return views;
}

CentralScheduler::CentralScheduler(cloud::World& world, Kind kind, const ResponseCostModel& cost,
                                   sim::TraceLog* trace)
    : world_(world), kind_(kind), cost_(cost), trace_(trace) {}

void CentralScheduler::start() {
    for (UserId id : world_.user_ids()) {
        world_.kernel().schedule(std::max(world_.now(), world_.request(id).arrival), sim::EntryKind::arrival,
                                 [this, id] { place({id}); });
    }
}

void CentralScheduler::place(std::vector<UserId> users) {
    std::erase_if(users, [&](UserId u) { return cloud::is_terminal(world_.status(u)); });
    if (users.empty()) {
        return;
    }
    for (UserId u : users) {
        world_.release(u);
    }
    // Releasing can complete a batch whose last task ends exactly now.
    std::erase_if(users, [&](UserId u) { return cloud::is_terminal(world_.status(u)); });
    std::vector<BatchView> batches;
    batches.reserve(users.size());
    for (UserId u : users) {
        batches.push_back(BatchView{u, world_.remaining_request(u).tasks});
    }
    const double tau = world_.now();
    std::vector<Assignment> plan;
    switch (kind_) {
    case Kind::mct: plan = assign_mct(batches, slot_views(world_), tau); break;
    case Kind::met: plan = assign_met(batches, slot_views(world_), tau); break;
    case Kind::min_min: plan = assign_min_min(batches, slot_views(world_), tau); break;
    case Kind::round_robin: plan = round_robin_.assign(batches, slot_views(world_), tau); break;
    }
    for (const auto& a : plan) {
        if (trace_ != nullptr && trace_->enabled()) {
            trace_->emit(tau, to_string(kind_), "assign",
                         {{"user", a.user},
                          {"vm", a.vm ? nlohmann::json(cloud::to_string(*a.vm)) : nlohmann::json(nullptr)},
                          {"start", a.start},
                          {"completion", a.completion}});
        }
        if (a.vm) {
            world_.move(a.user, *a.vm, a.start);
        } else {
            world_.fail(a.user);
        }
    }
}

double CentralScheduler::reactive_realloc(std::vector<UserId> affected) {
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
    const double delay = cost_.delay(affected.size(), world_.datacenter().vm_count());
    const double commit_at = std::max(world_.now(), busy_until_) + delay;
    busy_until_ = commit_at;
    ++reallocations_;
    if (trace_ != nullptr && trace_->enabled()) {
        trace_->emit(world_.now(), to_string(kind_), "realloc",
                     {{"users", affected}, {"delay", delay}, {"commit_at", commit_at}});
    }
    world_.kernel().schedule(commit_at, sim::EntryKind::other, [this, affected] { place(affected); });
    return commit_at;
}

std::vector<UserId> CentralScheduler::invalid_shifted(const cloud::MutationResult& result) const {
    std::vector<UserId> out;
    for (UserId u : result.shifted) {
        if (!resched::validate_contract(world_, u)) {
            out.push_back(u);
        }
    }
    return out;
}

void CentralScheduler::on_user_event(const resched::UncertainEvent& e, const cloud::MutationResult& result) {
    auto affected = invalid_shifted(result);
    affected.push_back(*e.user);
    reactive_realloc(std::move(affected));
}

void CentralScheduler::on_vm_event(const resched::UncertainEvent&, const cloud::MutationResult& result) {
    auto affected = invalid_shifted(result);
    affected.insert(affected.end(), result.affected.begin(), result.affected.end());
    if (!affected.empty()) {
        reactive_realloc(std::move(affected));
    }
}

}  // namespace agentsched::baselines
