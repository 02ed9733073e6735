#pragma once

#include <cstdint>
#include <functional>
#include <unordered_set>
#include <vector>

namespace agentsched::sim {

using EntryId = std::uint64_t;

/// What a queued entry does when it fires. Only used for bookkeeping and
/// tracing; the behaviour itself lives in the entry's action.
enum class EntryKind : std::uint8_t {
    deliver_message,
    agent_timer,
    uncertain_event,
    task_completion,
    deadline,
    arrival,
    other,
};

struct TimedEntry {
    double fire_at = 0.0;
    EntryKind kind = EntryKind::other;
    std::function<void()> action;
};

/// Deterministic discrete-event engine.
///
/// Entries fire in (fire_at, seq) order where seq is the insertion
/// sequence, so entries scheduled for the same instant fire FIFO. The clock
/// only moves when the next entry is dequeued (or when a run is cut off at
/// its limit).
class Kernel {
public:
    Kernel() = default;
    Kernel(const Kernel&) = delete;
    Kernel& operator=(const Kernel&) = delete;

    [[nodiscard]] double now() const noexcept { return now_; }

    /// Enqueues an entry. Throws std::logic_error if fire_at lies in the past.
    EntryId schedule(TimedEntry entry);
    EntryId schedule(double fire_at, EntryKind kind, std::function<void()> action);
    EntryId schedule_after(double delay, EntryKind kind, std::function<void()> action);

    /// True iff the entry existed and had not fired yet.
    bool cancel(EntryId id);

    [[nodiscard]] bool is_pending(EntryId id) const { return pending_.contains(id); }

    /// Processes entries until the queue drains or the next entry lies
    /// beyond `limit`; in the latter case the clock is parked at `limit`.
    double run_until_quiescent(double limit);

    [[nodiscard]] std::size_t pending() const noexcept { return pending_.size(); }
    [[nodiscard]] std::uint64_t processed() const noexcept { return processed_; }
    [[nodiscard]] bool hit_limit() const noexcept { return hit_limit_; }

private:
    struct Queued {
        double fire_at;
        EntryId seq;
        EntryKind kind;
        std::function<void()> action;
    };
    struct Later {
        bool operator()(const Queued& a, const Queued& b) const noexcept {
            if (a.fire_at != b.fire_at) {
                return a.fire_at > b.fire_at;
            }
            return a.seq > b.seq;
        }
    };

    std::vector<Queued> heap_;
    std::unordered_set<EntryId> pending_;
    double now_ = 0.0;
    EntryId next_seq_ = 0;
    std::uint64_t processed_ = 0;
    bool hit_limit_ = false;
};

}  // namespace agentsched::sim
