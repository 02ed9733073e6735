#include "agentsched/cloud/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace agentsched::cloud {

std::string to_string(VmId id) {
    return "h" + std::to_string(id.host) + ".v" + std::to_string(id.index);
}

std::string_view to_string(BatchStatus status) noexcept {
    switch (status) {
        case BatchStatus::pending: return "pending";
        case BatchStatus::scheduled: return "scheduled";
        case BatchStatus::executing: return "executing";
        case BatchStatus::completed: return "completed";
        case BatchStatus::failed: return "failed";
    }
    return "unknown";
}

bool is_terminal(BatchStatus status) noexcept {
    return status == BatchStatus::completed || status == BatchStatus::failed;
}

void Datacenter::validate() const {
    std::set<HostId> host_ids;
    for (const auto& host : hosts) {
        if (!host_ids.insert(host.host_id).second) {
            throw std::invalid_argument("duplicate host id " + std::to_string(host.host_id));
        }
        std::set<int> vm_indices;
        for (const auto& vm : host.vms) {
            if (vm.vm_id.host != host.host_id || !vm_indices.insert(vm.vm_id.index).second) {
                throw std::invalid_argument("bad or duplicate vm id " + to_string(vm.vm_id));
            }
            if (!(vm.cpu > 0.0 && vm.ram > 0.0 && vm.storage > 0.0 && vm.bandwidth > 0.0)) {
                throw std::invalid_argument("vm " + to_string(vm.vm_id) + " has a non-positive capacity");
            }
        }
    }
}

std::size_t Datacenter::vm_count() const noexcept {
    std::size_t n = 0;
    for (const auto& host : hosts) {
        n += host.vms.size();
    }
    return n;
}

const VmDescriptor* Datacenter::find(VmId id) const noexcept {
    for (const auto& host : hosts) {
        if (host.host_id != id.host) {
            continue;
        }
        for (const auto& vm : host.vms) {
            if (vm.vm_id == id) {
                return &vm;
            }
        }
    }
    return nullptr;
}

VmDescriptor* Datacenter::find(VmId id) noexcept {
    return const_cast<VmDescriptor*>(std::as_const(*this).find(id));
}

PeakRequirements peak_requirements(std::span<const TaskSpec> tasks) noexcept {
    PeakRequirements peak;
    for (const auto& t : tasks) {
        peak.ram = std::max(peak.ram, t.ram);
        peak.storage = std::max(peak.storage, t.storage);
        peak.bandwidth = std::max(peak.bandwidth, t.bandwidth);
    }
    return peak;
}

double total_workload(std::span<const TaskSpec> tasks) noexcept {
    double sum = 0.0;
    for (const auto& t : tasks) {
        sum += t.workload;
    }
    return sum;
}

bool capacity_fits(const Capacity& capacity, std::span<const TaskSpec> tasks) noexcept {
    const auto peak = peak_requirements(tasks);
    return capacity.ram >= peak.ram && capacity.storage >= peak.storage &&
           capacity.bandwidth >= peak.bandwidth;
}

double available_time(const VmDescriptor& vm, double tau) noexcept {
    double at = tau;
    for (const auto& r : vm.reservations) {
        at = std::max(at, r.end);
    }
    return at;
}

double completion_from(double available, double cpu, std::span<const TaskSpec> tasks) noexcept {
    return available + total_workload(tasks) / cpu;
}

double expected_completion(const VmDescriptor& vm, std::span<const TaskSpec> tasks, double tau) noexcept {
    return completion_from(available_time(vm, tau), vm.cpu, tasks);
}

bool feasible(const VmDescriptor& vm, const UserRequest& req, double tau) noexcept {
    return capacity_fits(vm.capacity(), req.tasks) &&
           expected_completion(vm, req.tasks, tau) <= req.deadline;
}

std::vector<double> cumulative_finishes(double start, double cpu, std::span<const TaskSpec> tasks) {
    std::vector<double> finishes;
    finishes.reserve(tasks.size());
    double prefix = 0.0;
    for (const auto& t : tasks) {
        prefix += t.workload;
        finishes.push_back(start + prefix / cpu);
    }
    return finishes;
}

namespace {

bool overlaps(double a_start, double a_end, double b_start, double b_end) noexcept {
    return a_start < b_end && b_start < a_end;
}

}  // namespace

Reservation& reserve(VmDescriptor& vm, const UserRequest& req, double start) {
    if (req.tasks.empty()) {
        throw std::logic_error("reserve: empty batch for user " + std::to_string(req.user_id));
    }
    Reservation r;
    r.user_id = req.user_id;
    r.vm_id = vm.vm_id;
    r.start = start;
    r.per_task_finish = cumulative_finishes(start, vm.cpu, req.tasks);
    r.end = r.per_task_finish.back();
    r.contract_deadline = req.deadline;
    r.task_ids.reserve(req.tasks.size());
    for (const auto& t : req.tasks) {
        r.task_ids.push_back(t.task_id);
    }
    for (const auto& other : vm.reservations) {
        if (overlaps(r.start, r.end, other.start, other.end)) {
            throw std::logic_error("reserve: [" + std::to_string(r.start) + ", " + std::to_string(r.end) +
                                   ") overlaps a reservation of user " + std::to_string(other.user_id) +
                                   " on " + to_string(vm.vm_id));
        }
    }
    auto pos = std::upper_bound(vm.reservations.begin(), vm.reservations.end(), r.start,
                                [](double s, const Reservation& x) { return s < x.start; });
    return *vm.reservations.insert(pos, std::move(r));
}

void check_non_overlap(const VmDescriptor& vm) {
    for (std::size_t i = 0; i < vm.reservations.size(); ++i) {
        for (std::size_t j = i + 1; j < vm.reservations.size(); ++j) {
            const auto& a = vm.reservations[i];
            const auto& b = vm.reservations[j];
            if (overlaps(a.start, a.end, b.start, b.end)) {
                throw std::logic_error("overlapping reservations on " + to_string(vm.vm_id) + " for users " +
                                       std::to_string(a.user_id) + " and " + std::to_string(b.user_id));
            }
        }
    }
}

}  // namespace agentsched::cloud
