#pragma once

#include <vector>

#include "agentsched/cloud/model.hpp"

namespace testing_support {

using namespace agentsched;

inline cloud::VmDescriptor make_vm(cloud::HostId host, int index, double cpu, double ram = 1740.0,
                                   double storage = 10.0, double bandwidth = 2000.0) {
    cloud::VmDescriptor v;
    v.vm_id = {host, index};
    v.cpu = cpu;
    v.ram = ram;
    v.storage = storage;
    v.bandwidth = bandwidth;
    return v;
}

/// cpus[h][i] is the MIPS of VM i on host h.
inline cloud::Datacenter make_datacenter(const std::vector<std::vector<double>>& cpus) {
    cloud::Datacenter dc;
    for (std::size_t h = 0; h < cpus.size(); ++h) {
        cloud::Host host;
        host.host_id = static_cast<int>(h);
        for (std::size_t i = 0; i < cpus[h].size(); ++i) {
            host.vms.push_back(make_vm(static_cast<int>(h), static_cast<int>(i), cpus[h][i]));
        }
        dc.hosts.push_back(std::move(host));
    }
    return dc;
}

inline cloud::UserRequest make_request(cloud::UserId user, const std::vector<double>& workloads,
                                       double deadline = cloud::unbounded_deadline, double ram = 800.0,
                                       double storage = 1.0, double bandwidth = 100.0) {
    cloud::UserRequest req;
    req.user_id = user;
    req.deadline = deadline;
    for (std::size_t i = 0; i < workloads.size(); ++i) {
        req.tasks.push_back({static_cast<int>(i), workloads[i], ram, storage, bandwidth});
    }
    return req;
}

}  // namespace testing_support
