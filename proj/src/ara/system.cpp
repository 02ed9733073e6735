#include "agentsched/ara/system.hpp"

#include <algorithm>

namespace agentsched::ara {

System::System(cloud::World& world, double latency, const AraParams& params, sim::TraceLog* trace)
    : world_(world), params_(params), platform_(world.kernel(), latency, trace) {
    supervise_ = std::make_unique<SuperviseAgent>(params_);
    platform_.register_agent(*supervise_);
    for (const auto& h : world_.datacenter().hosts) {
        auto agent = std::make_unique<HostAgent>(h.host_id, world_);
        platform_.register_agent(*agent);
        hosts_.emplace(h.host_id, std::move(agent));
    }
    for (UserId id : world_.user_ids()) {
        auto agent = std::make_unique<UserAgent>(id, world_, params_);
        platform_.register_agent(*agent);
        users_.emplace(id, std::move(agent));
    }
}

System::~System() {
    world_.set_observer(nullptr);
}

void System::start() {
    for (const auto& h : world_.datacenter().hosts) {
        for (const auto& v : h.vms) {
            supervise_->seed(h.host_id, snapshot_of(v));
        }
    }
    world_.set_observer(this);
    for (auto& [id, agent] : users_) {
        UserAgent* a = agent.get();
        world_.kernel().schedule(std::max(world_.now(), world_.request(id).arrival), sim::EntryKind::arrival,
                                 [a] { a->arrive(); });
    }
}

void System::vm_changed(VmId vm) {
    hosts_.at(vm.host)->vm_changed(vm);
}

void System::batch_terminal(UserId user) {
    users_.at(user)->on_terminal();
}

void System::on_user_event(const resched::UncertainEvent& e, const cloud::MutationResult& result) {
    users_.at(*e.user)->perceive(e);
    if (result.shifted.empty()) {
        return;
    }
    // Batches queued behind the target on its VM were pushed later; the host
    // checks them after the event step.
    const auto vm = world_.active_vm(*e.user).value_or(world_.last_vm(*e.user).value_or(VmId{}));
    auto shifted = result.shifted;
    HostAgent* host = hosts_.at(vm.host).get();
    world_.kernel().schedule(world_.now(), sim::EntryKind::other, [host, shifted] { host->absorb(shifted); });
}

void System::on_vm_event(const resched::UncertainEvent& e, const cloud::MutationResult& result) {
    std::vector<UserId> users = result.affected;
    users.insert(users.end(), result.shifted.begin(), result.shifted.end());
    HostAgent* host = hosts_.at(e.vm->host).get();
    world_.kernel().schedule(world_.now(), sim::EntryKind::other, [host, users] { host->absorb(users); });
}

}  // namespace agentsched::ara
