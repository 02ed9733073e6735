#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace agentsched::bdi {

struct Desire {
    std::string name;
    bool active = false;
    int priority = 0;  // higher wins
};

struct Intention {
    std::string desire;
    std::string name;
    int rank = 0;  // lower rank is tried first
    std::function<void()> plan;
    bool exhausted = false;
    bool running = false;
};

/// Desires and their ranked intentions for one agent.
class Deliberator {
public:
    void add_desire(std::string name, int priority) {
        if (find_desire(name) != nullptr) {
            throw std::invalid_argument("duplicate desire " + name);
        }
        desires_.push_back(Desire{std::move(name), false, priority});
    }

    void add_intention(const std::string& desire, std::string name, int rank, std::function<void()> plan) {
        if (find_desire(desire) == nullptr) {
            throw std::invalid_argument("unknown desire " + desire);
        }
        for (const auto& i : intentions_) {
            if (i.desire == desire && (i.name == name || i.rank == rank)) {
                throw std::invalid_argument("intentions of " + desire + " must have distinct names and ranks");
            }
        }
        intentions_.push_back(Intention{desire, std::move(name), rank, std::move(plan)});
        std::stable_sort(intentions_.begin(), intentions_.end(),
                         [](const Intention& a, const Intention& b) { return a.rank < b.rank; });
    }

    /// Activating an already active desire is a no-op; activation resets its
    /// intentions.
    void activate(const std::string& name) {
        auto& d = desire(name);
        if (d.active) {
            return;
        }
        d.active = true;
        reset(name);
    }

    void deactivate(const std::string& name) {
        desire(name).active = false;
        for (auto& i : intentions_) {
            if (i.desire == name) {
                i.running = false;
            }
        }
    }

    [[nodiscard]] bool active(const std::string& name) const { return desire(name).active; }

    [[nodiscard]] bool any_active() const {
        return std::any_of(desires_.begin(), desires_.end(), [](const Desire& d) { return d.active; });
    }

    /// Highest-priority active desire, if any.
    [[nodiscard]] const Desire* top_desire() const {
        const Desire* best = nullptr;
        for (const auto& d : desires_) {
            if (d.active && (best == nullptr || d.priority > best->priority)) {
                best = &d;
            }
        }
        return best;
    }

    /// Lowest-rank intention of the top desire that is not exhausted; marks it
    /// running. Returns nullptr if there is no active desire or all of its
    /// intentions are exhausted.
    Intention* deliberate() {
        const Desire* top = top_desire();
        if (top == nullptr) {
            return nullptr;
        }
        for (auto& i : intentions_) {
            i.running = false;
        }
        for (auto& i : intentions_) {
            if (i.desire == top->name && !i.exhausted) {
                i.running = true;
                return &i;
            }
        }
        return nullptr;
    }

    void exhaust(const std::string& desire_name, const std::string& intention_name) {
        auto& i = intention(desire_name, intention_name);
        i.exhausted = true;
        i.running = false;
    }

    void reset(const std::string& desire_name) {
        for (auto& i : intentions_) {
            if (i.desire == desire_name) {
                i.exhausted = false;
                i.running = false;
            }
        }
    }

    [[nodiscard]] const Intention* running() const {
        for (const auto& i : intentions_) {
            if (i.running) {
                return &i;
            }
        }
        return nullptr;
    }

    [[nodiscard]] const std::vector<Desire>& desires() const noexcept { return desires_; }
    [[nodiscard]] const std::vector<Intention>& intentions() const noexcept { return intentions_; }

private:
    Desire* find_desire(const std::string& name) {
        for (auto& d : desires_) {
            if (d.name == name) {
                return &d;
            }
        }
        return nullptr;
    }
    Desire& desire(const std::string& name) {
        auto* d = find_desire(name);
        if (d == nullptr) {
            throw std::invalid_argument("unknown desire " + name);
        }
        return *d;
    }
    const Desire& desire(const std::string& name) const { return const_cast<Deliberator*>(this)->desire(name); }
    Intention& intention(const std::string& desire_name, const std::string& name) {
        for (auto& i : intentions_) {
            if (i.desire == desire_name && i.name == name) {
                return i;
            }
        }
        throw std::invalid_argument("unknown intention " + desire_name + "/" + name);
    }

    std::vector<Desire> desires_;
    std::vector<Intention> intentions_;
};

}  // namespace agentsched::bdi
