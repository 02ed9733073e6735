#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "agentsched/cloud/model.hpp"

namespace agentsched::baselines {

using cloud::UserId;
using cloud::VmId;

enum class Kind : std::uint8_t { mct, met, min_min, round_robin };

[[nodiscard]] std::string_view to_string(Kind kind) noexcept;
[[nodiscard]] std::optional<Kind> kind_from_name(std::string_view name) noexcept;

/// What a central scheduler sees of one VM.
struct VmSlotView {
    VmId id;
    double cpu = 0.0;
    double ram = 0.0;
    double storage = 0.0;
    double bandwidth = 0.0;
    double tail = 0.0;  // end of the last queued reservation

    [[nodiscard]] cloud::Capacity capacity() const noexcept { return {cpu, ram, storage, bandwidth}; }
};

/// A batch (remaining work) waiting for placement.
struct BatchView {
    UserId user = 0;
    std::vector<cloud::TaskSpec> tasks;
};

/// vm unset: no VM can hold the batch's resource peaks.
struct Assignment {
    UserId user = 0;
    std::optional<VmId> vm;
    double start = 0.0;
    double completion = 0.0;
};

/// Each allocator places every batch on one VM, appending after the VM's
/// tail (and not before tau), and advances that tail as it goes. `vms` must
/// be sorted by id.
[[nodiscard]] std::vector<Assignment> assign_mct(std::span<const BatchView> batches, std::vector<VmSlotView> vms,
                                                 double tau);
[[nodiscard]] std::vector<Assignment> assign_met(std::span<const BatchView> batches, std::vector<VmSlotView> vms,
                                                 double tau);
/// Result is in commit order, not input order.
[[nodiscard]] std::vector<Assignment> assign_min_min(std::span<const BatchView> batches,
                                                     std::vector<VmSlotView> vms, double tau);

/// Circular assignment over the VM ring; the cursor survives across calls.
class RoundRobin {
public:
    [[nodiscard]] std::vector<Assignment> assign(std::span<const BatchView> batches, std::vector<VmSlotView> vms,
                                                 double tau);
    [[nodiscard]] std::size_t cursor() const noexcept { return cursor_; }

private:
    std::size_t cursor_ = 0;
};

}  // namespace agentsched::baselines
