#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agentsched::cloud {

using UserId = int;
using HostId = int;

inline constexpr double unbounded_deadline = 1e300;

/// VM k of host h.
struct VmId {
    HostId host = 0;
    int index = 0;

    auto operator<=>(const VmId&) const = default;
};

[[nodiscard]] std::string to_string(VmId id);

struct TaskSpec {
    int task_id = 0;
    double workload = 0.0;   // MI
    double ram = 0.0;        // MB
    double storage = 0.0;    // GB
    double bandwidth = 0.0;  // MB/s
};

enum class BatchStatus : std::uint8_t { pending, scheduled, executing, completed, failed };

[[nodiscard]] std::string_view to_string(BatchStatus status) noexcept;
[[nodiscard]] bool is_terminal(BatchStatus status) noexcept;

/// A user's task batch T_n together with the hard deadline D_n (absolute
/// simulation time).
struct UserRequest {
    UserId user_id = 0;
    std::vector<TaskSpec> tasks;
    double deadline = unbounded_deadline;
    double arrival = 0.0;
    BatchStatus status = BatchStatus::pending;
};

/// Contract binding one batch to one VM. per_task_finish[i] is the finish time
/// of task task_ids[i]; tasks run back to back in submission order.
struct Reservation {
    UserId user_id = 0;
    VmId vm_id;
    double start = 0.0;
    double end = 0.0;
    std::vector<int> task_ids;
    std::vector<double> per_task_finish;
    double contract_deadline = unbounded_deadline;
    bool active = true;  // false once completed or cut short; kept as ledger history
};

enum class LeaseStatus : std::uint8_t { ready, busy };

struct LeaseState {
    LeaseStatus state = LeaseStatus::ready;
    std::optional<UserId> holder;
    double leased_at = 0.0;

    [[nodiscard]] bool consistent() const noexcept {
        return (state == LeaseStatus::busy) == holder.has_value();
    }
};

struct Capacity {
    double cpu = 0.0;        // MIPS
    double ram = 0.0;        // MB
    double storage = 0.0;    // GB
    double bandwidth = 0.0;  // MB/s
};

struct VmDescriptor {
    VmId vm_id;
    double cpu = 0.0;
    double ram = 0.0;
    double storage = 0.0;
    double bandwidth = 0.0;
    std::vector<Reservation> reservations;  // ordered by start

    [[nodiscard]] Capacity capacity() const noexcept { return {cpu, ram, storage, bandwidth}; }
};

struct Host {
    HostId host_id = 0;
    std::vector<VmDescriptor> vms;
};

struct Datacenter {
    std::vector<Host> hosts;

    /// Throws std::invalid_argument on duplicate ids or non-positive capacities.
    void validate() const;
    [[nodiscard]] std::size_t vm_count() const noexcept;
    [[nodiscard]] const VmDescriptor* find(VmId id) const noexcept;
    [[nodiscard]] VmDescriptor* find(VmId id) noexcept;
};

/// Peak per-resource requirement over a batch.
struct PeakRequirements {
    double ram = 0.0;
    double storage = 0.0;
    double bandwidth = 0.0;
};

[[nodiscard]] PeakRequirements peak_requirements(std::span<const TaskSpec> tasks) noexcept;
[[nodiscard]] double total_workload(std::span<const TaskSpec> tasks) noexcept;

/// Rating check on ram/storage/bandwidth; these are not time-shared.
[[nodiscard]] bool capacity_fits(const Capacity& capacity, std::span<const TaskSpec> tasks) noexcept;

/// max(tau, end of the last reservation).
[[nodiscard]] double available_time(const VmDescriptor& vm, double tau) noexcept;

/// available + sum(workload) / cpu. Shared by every feasibility path so that
/// quotes and committed reservations agree bit for bit.
[[nodiscard]] double completion_from(double available, double cpu, std::span<const TaskSpec> tasks) noexcept;

[[nodiscard]] double expected_completion(const VmDescriptor& vm, std::span<const TaskSpec> tasks,
                                         double tau) noexcept;

[[nodiscard]] bool feasible(const VmDescriptor& vm, const UserRequest& req, double tau) noexcept;

/// Appends a reservation for the whole batch starting at `start`. Throws
/// std::logic_error if the interval overlaps an existing reservation.
Reservation& reserve(VmDescriptor& vm, const UserRequest& req, double start);

/// Finish times start + prefix(workload)/cpu.
[[nodiscard]] std::vector<double> cumulative_finishes(double start, double cpu,
                                                      std::span<const TaskSpec> tasks);

/// Throws std::logic_error if any two reservations on the VM overlap.
void check_non_overlap(const VmDescriptor& vm);

}  // namespace agentsched::cloud
