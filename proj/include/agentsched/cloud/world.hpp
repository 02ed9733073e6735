#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "agentsched/cloud/model.hpp"
#include "agentsched/sim/kernel.hpp"
#include "agentsched/sim/trace.hpp"

namespace agentsched::cloud {

struct TaskProgress {
    double done = 0.0;  // MI executed so far
    std::optional<double> finished_at;
};

/// A priced slot for a batch's remaining work on one VM.
struct Quote {
    VmId vm;
    double start = 0.0;
    double completion = 0.0;
};

enum class Placement : std::uint8_t {
    append,        // after the last reservation on the VM
    earliest_fit,  // first gap (or the tail) that holds the whole remaining batch
};

/// Receives ground-truth change notifications. Agents perceive the world
/// through these.
class WorldObserver {
public:
    virtual ~WorldObserver() = default;
    virtual void vm_changed(VmId) {}
    virtual void batch_terminal(UserId) {}
};

struct TaskFactors {
    double workload = 1.0;
    double ram = 1.0;
    double storage = 1.0;
    double bandwidth = 1.0;
};

struct VmFactors {
    double cpu = 1.0;
    double ram = 1.0;
    double storage = 1.0;
    double bandwidth = 1.0;
};

struct MutationResult {
    bool vacuous = false;
    std::vector<UserId> affected;   // batches holding a reservation on the touched VM, ascending
    std::vector<UserId> shifted;    // other batches whose completion moved later
    std::vector<UserId> suspended;  // batches whose VM no longer fits them; reservation cut
};

/// Ground truth of the simulated datacenter: VM ledgers, batch progress and
/// the execution physics (completion and deadline entries on the kernel).
///
/// Execution model: each VM runs its active reservations back to back in
/// start order. Reservation starts never move earlier; when a VM slows down or
/// a batch grows, the affected reservation and everything queued behind it on
/// that VM are recomputed and pushed later as needed. Work already executed is
/// kept. At a batch's deadline any unfinished work is abandoned.
class World {
public:
    World(sim::Kernel& kernel, Datacenter datacenter, std::vector<UserRequest> users,
          sim::TraceLog* trace = nullptr);
    World(const World&) = delete;
    World& operator=(const World&) = delete;

    void set_observer(WorldObserver* observer) noexcept { observer_ = observer; }
    /// Re-check the non-overlap invariant after every mutation.
    void set_verify(bool on) noexcept { verify_ = on; }

    [[nodiscard]] double now() const noexcept { return kernel_.now(); }
    [[nodiscard]] sim::Kernel& kernel() noexcept { return kernel_; }
    [[nodiscard]] const Datacenter& datacenter() const noexcept { return datacenter_; }
    [[nodiscard]] const VmDescriptor& vm(VmId id) const;
    [[nodiscard]] std::vector<VmId> vm_ids() const;

    [[nodiscard]] std::vector<UserId> user_ids() const;
    [[nodiscard]] const UserRequest& request(UserId user) const;
    [[nodiscard]] const std::vector<TaskProgress>& progress(UserId user) const;
    [[nodiscard]] BatchStatus status(UserId user) const;
    [[nodiscard]] const Reservation* active_reservation(UserId user) const;
    [[nodiscard]] std::optional<VmId> active_vm(UserId user) const;
    /// VM of the most recent contract, active or not.
    [[nodiscard]] std::optional<VmId> last_vm(UserId user) const;
    /// Unfinished tasks with their remaining workload and the current deadline.
    [[nodiscard]] UserRequest remaining_request(UserId user) const;
    [[nodiscard]] std::vector<UserId> users_on(VmId vm) const;

    /// Prices the user's remaining work on `vm` at the current time, treating
    /// the user's own unconsumed reservation as already released.
    [[nodiscard]] Quote quote(UserId user, VmId vm, Placement placement) const;
    /// Capacity fits and the quoted completion meets the deadline.
    [[nodiscard]] bool acceptable(UserId user, const Quote& quote) const;

    /// Releases the user's current remainder (if any) and commits a new
    /// reservation at `start`, as one step. Throws std::logic_error on overlap.
    /// Returns nullptr if cutting the old remainder completed the batch.
    const Reservation* move(UserId user, VmId vm, double start);
    /// Cuts the user's active reservation at the current time.
    void release(UserId user);
    /// Marks a batch failed immediately, e.g. when no VM can ever host it.
    void fail(UserId user);

    MutationResult inflate_tasks(UserId user, const TaskFactors& factors);
    MutationResult cut_deadline(UserId user, double delta);
    MutationResult degrade_vm(VmId vm, const VmFactors& factors);

    void verify_ledger() const;

private:
    struct Batch {
        UserRequest request;
        std::vector<TaskProgress> progress;
        std::optional<VmId> active_vm;
        std::optional<VmId> last_vm;
        double anchor = 0.0;  // time from which the active reservation's open tasks were timed
        std::optional<sim::EntryId> completion_entry;
        std::optional<sim::EntryId> deadline_entry;
    };

    Batch& batch(UserId user);
    const Batch& batch(UserId user) const;
    VmDescriptor& vm_mut(VmId id);
    Reservation* active_in(VmDescriptor& vm, UserId user);
    const Reservation* active_in(const VmDescriptor& vm, UserId user) const;

    void advance(Batch& b, const Reservation& r, double t);
    std::vector<UserId> rebuild(VmDescriptor& vm, double t, const std::function<void()>& mutate);
    void cut(Batch& b, VmDescriptor& vm, double t);
    void arm_completion(Batch& b, double at);
    void arm_deadline(Batch& b);
    void on_completion(UserId user);
    void on_deadline(UserId user);
    void finish(Batch& b, bool check_deadline);
    void after_mutation(std::initializer_list<VmId> touched);
    void trace(std::string_view kind, const nlohmann::json& detail);

    sim::Kernel& kernel_;
    Datacenter datacenter_;
    std::vector<Batch> batches_;
    std::map<UserId, std::size_t> index_;
    WorldObserver* observer_ = nullptr;
    sim::TraceLog* trace_ = nullptr;
    bool verify_ = false;
};

}  // namespace agentsched::cloud
