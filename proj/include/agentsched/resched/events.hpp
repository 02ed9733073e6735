#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "agentsched/cloud/world.hpp"
#include "agentsched/sim/rng.hpp"

namespace agentsched::resched {

using cloud::UserId;
using cloud::VmId;

enum class EventKind : std::uint8_t { task_inflate, deadline_cut, vm_degrade };

[[nodiscard]] std::string_view to_string(EventKind kind) noexcept;

/// A timed mutation of one batch or one VM.
struct UncertainEvent {
    int event_id = 0;
    double fire_at = 0.0;
    EventKind kind = EventKind::task_inflate;
    std::optional<UserId> user;  // task_inflate, deadline_cut
    std::optional<VmId> vm;      // vm_degrade
    cloud::TaskFactors task_factors;
    cloud::VmFactors vm_factors;
    double deadline_cut = 0.0;  // seconds
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

struct EventRanges {
    Range inflate{1.10, 1.50};
    Range degrade{0.50, 0.90};
    Range deadline_cut{100.0, 1000.0};
};

/// Every batch and every VM is considered once. All draws for a target are
/// made whether or not it is selected, so for a fixed seed the events chosen at
/// probability p are a subset of those chosen at any larger p, with identical
/// parameters.
[[nodiscard]] std::vector<UncertainEvent> generate_events(std::span<const UserId> users, std::span<const VmId> vms,
                                                          double probability, double horizon,
                                                          const EventRanges& ranges, sim::RngStream& rng);

/// Throws std::invalid_argument if factors lie outside `ranges`, a target is
/// missing, or two events share a target.
void validate_events(std::span<const UncertainEvent> events, const EventRanges& ranges);

/// Reaction to a non-vacuous event, called right after the ground truth has
/// been mutated.
class EventReactor {
public:
    virtual ~EventReactor() = default;
    virtual void on_user_event(const UncertainEvent& e, const cloud::MutationResult& result) = 0;
    virtual void on_vm_event(const UncertainEvent& e, const cloud::MutationResult& result) = 0;
};

/// Applies the mutation to the world. Events on terminal batches are vacuous
/// and the reactor is not called.
cloud::MutationResult apply_event(cloud::World& world, const UncertainEvent& e, EventReactor* reactor,
                                  sim::TraceLog* trace = nullptr);

void to_json(nlohmann::json& j, const UncertainEvent& e);
void from_json(const nlohmann::json& j, UncertainEvent& e);

}  // namespace agentsched::resched
