#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "agentsched/bdi/belief_store.hpp"
#include "agentsched/bdi/deliberation.hpp"
#include "agentsched/sim/kernel.hpp"
#include "agentsched/sim/trace.hpp"

namespace agentsched::bdi {

enum class AgentKind : std::uint8_t { user, host, supervise };

struct AgentId {
    AgentKind kind = AgentKind::user;
    int id = 0;
    auto operator<=>(const AgentId&) const = default;
};

inline std::string to_string(AgentId a) {
    switch (a.kind) {
    case AgentKind::user: return "user:" + std::to_string(a.id);
    case AgentKind::host: return "host:" + std::to_string(a.id);
    case AgentKind::supervise: return "supervise:" + std::to_string(a.id);
    }
    return "?";
}

enum class Performative : std::uint8_t { request, propose, accept, reject, inform, failure };

inline std::string_view to_string(Performative p) noexcept {
    switch (p) {
    case Performative::request: return "request";
    case Performative::propose: return "propose";
    case Performative::accept: return "accept";
    case Performative::reject: return "reject";
    case Performative::inform: return "inform";
    case Performative::failure: return "failure";
    }
    return "?";
}

using ConversationId = std::uint64_t;

template <class Body>
struct Message {
    ConversationId conversation = 0;
    AgentId from;
    AgentId to;
    Performative performative = Performative::inform;
    Body body{};
};

template <class Body>
struct Listener {
    double timeout = 1.0;
    std::function<void(const Message<Body>&)> on_result;
    std::function<void()> on_timeout;
};

struct PlatformCounters {
    std::uint64_t sent = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped = 0;
    std::uint64_t failures_returned = 0;
    std::uint64_t listeners_registered = 0;
    std::uint64_t results_fired = 0;
    std::uint64_t timeouts_fired = 0;
    std::uint64_t late_discarded = 0;
};

template <class Body>
class Platform;

/// Base for all agents. Subclasses implement handle() for messages that are
/// not replies to one of their own open conversations.
template <class Body>
class Agent {
public:
    explicit Agent(AgentId id) : id_(id) {}
    virtual ~Agent() = default;
    Agent(const Agent&) = delete;
    Agent& operator=(const Agent&) = delete;

    [[nodiscard]] AgentId id() const noexcept { return id_; }
    [[nodiscard]] BeliefStore& beliefs() noexcept { return beliefs_; }
    [[nodiscard]] const BeliefStore& beliefs() const noexcept { return beliefs_; }
    [[nodiscard]] Deliberator& deliberator() noexcept { return deliberator_; }
    [[nodiscard]] std::size_t open_listeners() const noexcept { return listeners_.size(); }

    /// Writes a belief, tracing the change.
    bool update_belief(const std::string& key, nlohmann::json value) {
        const bool changed = beliefs_.update(key, value);
        if (changed) {
            trace("belief", {{"key", key}, {"value", std::move(value)}});
        }
        return changed;
    }

protected:
    virtual void handle(const Message<Body>& msg) = 0;

    [[nodiscard]] Platform<Body>& platform() const {
        if (platform_ == nullptr) {
            throw std::logic_error("agent " + to_string(id_) + " is not registered");
        }
        return *platform_;
    }
    [[nodiscard]] double now() const { return platform().kernel().now(); }

    ConversationId new_conversation() { return platform().next_conversation(); }

    void send(AgentId to, Performative p, ConversationId conv, Body body) {
        platform().send(Message<Body>{conv, id_, to, p, std::move(body)});
    }

    /// Sends and registers a listener for the reply on the same conversation.
    void send(AgentId to, Performative p, ConversationId conv, Body body, Listener<Body> listener) {
        listen(conv, std::move(listener));
        send(to, p, conv, std::move(body));
    }

    /// Exactly one of on_result/on_timeout will fire for this listener.
    void listen(ConversationId conv, Listener<Body> listener) {
        if (listeners_.contains(conv)) {
            throw std::logic_error("conversation already has a listener");
        }
        auto& pf = platform();
        const AgentId self = id_;
        Platform<Body>* p = &pf;
        const auto timer = pf.kernel().schedule_after(listener.timeout, sim::EntryKind::agent_timer,
                                                      [p, self, conv] { p->expire(self, conv); });
        closed_.erase(conv);
        listeners_.emplace(conv, Open{std::move(listener), timer});
        ++pf.counters_.listeners_registered;
    }

    sim::EntryId set_timer(double delay, std::function<void()> fn) {
        return platform().kernel().schedule_after(delay, sim::EntryKind::agent_timer, std::move(fn));
    }
    bool cancel_timer(sim::EntryId id) { return platform().kernel().cancel(id); }

    void trace(std::string_view kind, const nlohmann::json& detail) const {
        if (platform_ != nullptr) {
            platform_->trace_record(id_, kind, detail);
        }
    }

private:
    friend class Platform<Body>;

    struct Open {
        Listener<Body> listener;
        sim::EntryId timer;
    };

    void receive(const Message<Body>& msg) {
        auto it = listeners_.find(msg.conversation);
        if (it != listeners_.end()) {
            auto open = std::move(it->second);
            listeners_.erase(it);
            closed_.insert(msg.conversation);
            platform_->kernel().cancel(open.timer);
            ++platform_->counters_.results_fired;
            if (open.listener.on_result) {
                open.listener.on_result(msg);
            }
            return;
        }
        if (closed_.contains(msg.conversation)) {
            ++platform_->counters_.late_discarded;
            trace("discard", {{"conversation", msg.conversation}, {"from", to_string(msg.from)}});
            return;
        }
        handle(msg);
    }

    void expire(ConversationId conv) {
        auto it = listeners_.find(conv);
        if (it == listeners_.end()) {
            return;
        }
        auto open = std::move(it->second);
        listeners_.erase(it);
        closed_.insert(conv);
        ++platform_->counters_.timeouts_fired;
        trace("timeout", {{"conversation", conv}});
        if (open.listener.on_timeout) {
            open.listener.on_timeout();
        }
    }

    AgentId id_;
    Platform<Body>* platform_ = nullptr;
    BeliefStore beliefs_;
    Deliberator deliberator_;
    std::map<ConversationId, Open> listeners_;
    std::set<ConversationId> closed_;
};

/// Mailbox transport over the kernel. Every message is delivered
/// `latency` seconds after it is sent; each delivery is one atomic agent step.
template <class Body>
class Platform {
public:
    using DropFilter = std::function<bool(const Message<Body>&)>;

    Platform(sim::Kernel& kernel, double latency, sim::TraceLog* trace = nullptr)
        : kernel_(kernel), latency_(latency), trace_(trace) {
        if (latency < 0.0) {
            throw std::invalid_argument("latency must be non-negative");
        }
    }
    Platform(const Platform&) = delete;
    Platform& operator=(const Platform&) = delete;

    void register_agent(Agent<Body>& agent) {
        if (!agents_.emplace(agent.id(), &agent).second) {
            throw std::logic_error("agent " + to_string(agent.id()) + " registered twice");
        }
        agent.platform_ = this;
    }

    void deregister(AgentId id) { agents_.erase(id); }

    [[nodiscard]] bool registered(AgentId id) const { return agents_.contains(id); }

    void send(Message<Body> msg) {
        if (!agents_.contains(msg.from)) {
            throw std::logic_error("sender " + to_string(msg.from) + " is not registered");
        }
        post(std::move(msg));
    }

    [[nodiscard]] ConversationId next_conversation() noexcept { return ++last_conversation_; }

    [[nodiscard]] sim::Kernel& kernel() noexcept { return kernel_; }
    [[nodiscard]] double latency() const noexcept { return latency_; }
    [[nodiscard]] const PlatformCounters& counters() const noexcept { return counters_; }

    /// Messages for which the filter returns true are silently lost in transit.
    void set_drop_filter(DropFilter f) { drop_filter_ = std::move(f); }

    [[nodiscard]] bool trace_enabled() const noexcept { return trace_ != nullptr && trace_->enabled(); }

    void trace_record(AgentId agent, std::string_view kind, const nlohmann::json& detail) const {
        if (trace_enabled()) {
            trace_->emit(kernel_.now(), to_string(agent), kind, detail);
        }
    }

private:
    friend class Agent<Body>;

    void post(Message<Body> msg) {
        ++counters_.sent;
        if (trace_enabled()) {
            trace_record(msg.from, "send", describe(msg));
        }
        if (drop_filter_ && drop_filter_(msg)) {
            ++counters_.dropped;
            trace_record(msg.from, "drop", {{"conversation", msg.conversation}});
            return;
        }
        kernel_.schedule_after(latency_, sim::EntryKind::deliver_message,
                               [this, m = std::move(msg)] { deliver(m); });
    }


    static nlohmann::json describe(const Message<Body>& msg) {
        return {{"conversation", msg.conversation},
                {"from", to_string(msg.from)},
                {"to", to_string(msg.to)},
                {"performative", std::string(to_string(msg.performative))},
                {"body", nlohmann::json(msg.body)}};
    }

    void deliver(const Message<Body>& msg) {
        auto it = agents_.find(msg.to);
        if (it == agents_.end()) {
            if (msg.performative != Performative::failure && agents_.contains(msg.from)) {
                ++counters_.failures_returned;
                post(Message<Body>{msg.conversation, msg.to, msg.from, Performative::failure, msg.body});
            }
            return;
        }
        ++counters_.delivered;
        if (trace_enabled()) {
            trace_record(msg.to, "deliver", describe(msg));
        }
        it->second->receive(msg);
    }

    void expire(AgentId agent, ConversationId conv) {
        auto it = agents_.find(agent);
        if (it != agents_.end()) {
            it->second->expire(conv);
        }
    }

    sim::Kernel& kernel_;
    double latency_;
    sim::TraceLog* trace_;
    std::map<AgentId, Agent<Body>*> agents_;
    PlatformCounters counters_;
    DropFilter drop_filter_;
    ConversationId last_conversation_ = 0;
};

}  // namespace agentsched::bdi
