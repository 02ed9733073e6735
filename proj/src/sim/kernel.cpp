#include "agentsched/sim/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace agentsched::sim {

EntryId Kernel::schedule(TimedEntry entry) {
    if (std::isnan(entry.fire_at) || entry.fire_at < now_) {
        throw std::logic_error("Kernel::schedule: fire_at " + std::to_string(entry.fire_at) +
                               " precedes the clock " + std::to_string(now_));
    }
    const EntryId id = next_seq_++;
    heap_.push_back(Queued{entry.fire_at, id, entry.kind, std::move(entry.action)});
    std::push_heap(heap_.begin(), heap_.end(), Later{});
    pending_.insert(id);
    return id;
}

EntryId Kernel::schedule(double fire_at, EntryKind kind, std::function<void()> action) {
    return schedule(TimedEntry{fire_at, kind, std::move(action)});
}

EntryId Kernel::schedule_after(double delay, EntryKind kind, std::function<void()> action) {
    return schedule(TimedEntry{now_ + delay, kind, std::move(action)});
}

bool Kernel::cancel(EntryId id) {
    return pending_.erase(id) > 0;
}

double Kernel::run_until_quiescent(double limit) {
    hit_limit_ = false;
    while (!heap_.empty()) {
        if (!pending_.contains(heap_.front().seq)) {
            std::pop_heap(heap_.begin(), heap_.end(), Later{});
            heap_.pop_back();
            continue;
        }
        if (heap_.front().fire_at > limit) {
            now_ = std::max(now_, limit);
            hit_limit_ = true;
            return now_;
        }
        std::pop_heap(heap_.begin(), heap_.end(), Later{});
        Queued next = std::move(heap_.back());
        heap_.pop_back();
        pending_.erase(next.seq);
        now_ = next.fire_at;
        ++processed_;
        if (next.action) {
            next.action();
        }
    }
    return now_;
}

}  // namespace agentsched::sim
