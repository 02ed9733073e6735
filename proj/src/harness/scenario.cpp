#include "agentsched/harness/scenario.hpp"

#include "agentsched/sim/rng.hpp"

namespace agentsched::harness {

Scenario generate_scenario(const ScenarioConfig& config) {
    validate(config);
    sim::RngStream rng(config.seed, sim::Stream::scenario);
    Scenario s;
    s.datacenter.hosts.reserve(static_cast<std::size_t>(config.hosts));
    for (int h = 0; h < config.hosts; ++h) {
        cloud::Host host;
        host.host_id = h;
        const auto k = rng.uniform_int(config.vms_per_host.lo, config.vms_per_host.hi);
        for (int i = 0; i < k; ++i) {
            cloud::VmDescriptor vm;
            vm.vm_id = cloud::VmId{h, i};
            vm.cpu = rng.uniform(config.vm_cpu.lo, config.vm_cpu.hi);
            vm.ram = rng.uniform(config.vm_ram.lo, config.vm_ram.hi);
            vm.storage = rng.uniform(config.vm_storage.lo, config.vm_storage.hi);
            vm.bandwidth = rng.uniform(config.vm_bandwidth.lo, config.vm_bandwidth.hi);
            host.vms.push_back(std::move(vm));
        }
        s.datacenter.hosts.push_back(std::move(host));
    }
    s.users.reserve(static_cast<std::size_t>(config.users));
    for (int u = 0; u < config.users; ++u) {
        cloud::UserRequest req;
        req.user_id = u;
        req.arrival = rng.uniform(config.arrival_window.lo, config.arrival_window.hi);
        const auto n = rng.uniform_int(config.tasks_per_user.lo, config.tasks_per_user.hi);
        for (int p = 0; p < n; ++p) {
            cloud::TaskSpec t;
            t.task_id = p;
            t.workload = rng.uniform(config.task_workload.lo, config.task_workload.hi);
            t.ram = rng.uniform(config.task_ram.lo, config.task_ram.hi);
            t.storage = rng.uniform(config.task_storage.lo, config.task_storage.hi);
            t.bandwidth = rng.uniform(config.task_bandwidth.lo, config.task_bandwidth.hi);
            req.tasks.push_back(t);
        }
        if (config.deadline) {
            req.deadline = req.arrival + rng.uniform(config.deadline->lo, config.deadline->hi);
        }
        s.users.push_back(std::move(req));
    }
    return s;
}

}  // namespace agentsched::harness
