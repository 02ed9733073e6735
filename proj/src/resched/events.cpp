#include "agentsched/resched/events.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace agentsched::resched {

std::string_view to_string(EventKind kind) noexcept {
    switch (kind) {
    case EventKind::task_inflate: return "task_inflate";
    case EventKind::deadline_cut: return "deadline_cut";
    case EventKind::vm_degrade: return "vm_degrade";
    }
    return "?";
}

std::vector<UncertainEvent> generate_events(std::span<const UserId> users, std::span<const VmId> vms,
                                            double probability, double horizon, const EventRanges& ranges,
                                            sim::RngStream& rng) {
    if (!(probability >= 0.0 && probability <= 1.0)) {
        throw std::invalid_argument("event probability must lie in [0, 1]");
    }
    if (horizon < 0.0) {
        throw std::invalid_argument("event horizon must be non-negative");
    }
    std::vector<UncertainEvent> events;
    int next_id = 0;
    for (UserId user : users) {
        const double u = rng.uniform01();
        const bool inflate = rng.uniform01() < 0.5;
        cloud::TaskFactors tf{rng.uniform(ranges.inflate.lo, ranges.inflate.hi),
                              rng.uniform(ranges.inflate.lo, ranges.inflate.hi),
                              rng.uniform(ranges.inflate.lo, ranges.inflate.hi),
                              rng.uniform(ranges.inflate.lo, ranges.inflate.hi)};
        const double cut = rng.uniform(ranges.deadline_cut.lo, ranges.deadline_cut.hi);
        const double at = rng.uniform01() * horizon;
        if (u >= probability) {
            continue;
        }
        UncertainEvent e;
        e.event_id = next_id++;
        e.fire_at = at;
        e.user = user;
        if (inflate) {
            e.kind = EventKind::task_inflate;
            e.task_factors = tf;
        } else {
            e.kind = EventKind::deadline_cut;
            e.deadline_cut = cut;
        }
        events.push_back(e);
    }
    for (VmId vm : vms) {
        const double u = rng.uniform01();
        cloud::VmFactors vf{rng.uniform(ranges.degrade.lo, ranges.degrade.hi),
                            rng.uniform(ranges.degrade.lo, ranges.degrade.hi),
                            rng.uniform(ranges.degrade.lo, ranges.degrade.hi),
                            rng.uniform(ranges.degrade.lo, ranges.degrade.hi)};
        const double at = rng.uniform01() * horizon;
        if (u >= probability) {
            continue;
        }
        UncertainEvent e;
        e.event_id = next_id++;
        e.fire_at = at;
        e.kind = EventKind::vm_degrade;
        e.vm = vm;
        e.vm_factors = vf;
        events.push_back(e);
    }
    return events;
}

namespace {

void check_factor(double f, const Range& r, const char* what) {
    if (!(f >= r.lo && f <= r.hi)) {
        throw std::invalid_argument(std::string(what) + " factor " + std::to_string(f) + " outside [" +
                                    std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
    }
}

}  // namespace

void validate_events(std::span<const UncertainEvent> events, const EventRanges& ranges) {
    std::set<UserId> users;
    std::set<VmId> vms;
    std::set<int> ids;
    for (const auto& e : events) {
        if (!ids.insert(e.event_id).second) {
            throw std::invalid_argument("duplicate event id " + std::to_string(e.event_id));
        }
        if (e.fire_at < 0.0) {
            throw std::invalid_argument("event fire_at must be non-negative");
        }
        switch (e.kind) {
        case EventKind::task_inflate:
        case EventKind::deadline_cut:
            if (!e.user || e.vm) {
                throw std::invalid_argument("batch event needs exactly a user target");
            }
            if (!users.insert(*e.user).second) {
                throw std::invalid_argument("more than one event for user " + std::to_string(*e.user));
            }
            if (e.kind == EventKind::task_inflate) {
                check_factor(e.task_factors.workload, ranges.inflate, "inflate");
                check_factor(e.task_factors.ram, ranges.inflate, "inflate");
                check_factor(e.task_factors.storage, ranges.inflate, "inflate");
                check_factor(e.task_factors.bandwidth, ranges.inflate, "inflate");
            } else {
                check_factor(e.deadline_cut, ranges.deadline_cut, "deadline cut");
            }
            break;
        case EventKind::vm_degrade:
            if (!e.vm || e.user) {
                throw std::invalid_argument("vm event needs exactly a vm target");
            }
            if (!vms.insert(*e.vm).second) {
                throw std::invalid_argument("more than one event for vm " + cloud::to_string(*e.vm));
            }
            check_factor(e.vm_factors.cpu, ranges.degrade, "degrade");
            check_factor(e.vm_factors.ram, ranges.degrade, "degrade");
            check_factor(e.vm_factors.storage, ranges.degrade, "degrade");
            check_factor(e.vm_factors.bandwidth, ranges.degrade, "degrade");
            break;
        }
    }
}

cloud::MutationResult apply_event(cloud::World& world, const UncertainEvent& e, EventReactor* reactor,
                                  sim::TraceLog* trace) {
    cloud::MutationResult result;
    switch (e.kind) {
    case EventKind::task_inflate: result = world.inflate_tasks(*e.user, e.task_factors); break;
    case EventKind::deadline_cut: result = world.cut_deadline(*e.user, e.deadline_cut); break;
    case EventKind::vm_degrade: result = world.degrade_vm(*e.vm, e.vm_factors); break;
    }
    if (trace != nullptr && trace->enabled()) {
        nlohmann::json detail = e;
        detail["vacuous"] = result.vacuous;
        detail["affected"] = result.affected;
        detail["shifted"] = result.shifted;
        detail["suspended"] = result.suspended;
        trace->emit(world.now(), "world", "event", detail);
    }
    if (result.vacuous || reactor == nullptr) {
        return result;
    }
    if (e.kind == EventKind::vm_degrade) {
        reactor->on_vm_event(e, result);
    } else {
        reactor->on_user_event(e, result);
    }
    return result;
}

void to_json(nlohmann::json& j, const UncertainEvent& e) {
    j = nlohmann::json{{"id", e.event_id}, {"fire_at", e.fire_at}, {"kind", std::string(to_string(e.kind))}};
    switch (e.kind) {
    case EventKind::task_inflate:
        j["user"] = *e.user;
        j["factors"] = {e.task_factors.workload, e.task_factors.ram, e.task_factors.storage,
                        e.task_factors.bandwidth};
        break;
    case EventKind::deadline_cut:
        j["user"] = *e.user;
        j["cut"] = e.deadline_cut;
        break;
    case EventKind::vm_degrade:
        j["vm"] = {e.vm->host, e.vm->index};
        j["factors"] = {e.vm_factors.cpu, e.vm_factors.ram, e.vm_factors.storage, e.vm_factors.bandwidth};
        break;
    }
}

void from_json(const nlohmann::json& j, UncertainEvent& e) {
    static const std::set<std::string> allowed{"id", "fire_at", "kind", "user", "vm", "factors", "cut"};
    for (const auto& [key, _] : j.items()) {
        if (!allowed.contains(key)) {
            throw std::invalid_argument("unknown event field '" + key + "'");
        }
    }
    e = UncertainEvent{};
    e.event_id = j.at("id").get<int>();
    e.fire_at = j.at("fire_at").get<double>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "task_inflate") {
        e.kind = EventKind::task_inflate;
        e.user = j.at("user").get<UserId>();
        const auto f = j.at("factors").get<std::vector<double>>();
        if (f.size() != 4) {
            throw std::invalid_argument("task_inflate needs 4 factors");
        }
        e.task_factors = {f[0], f[1], f[2], f[3]};
    } else if (kind == "deadline_cut") {
        e.kind = EventKind::deadline_cut;
        e.user = j.at("user").get<UserId>();
        e.deadline_cut = j.at("cut").get<double>();
    } else if (kind == "vm_degrade") {
        e.kind = EventKind::vm_degrade;
        const auto v = j.at("vm").get<std::vector<int>>();
        if (v.size() != 2) {
            throw std::invalid_argument("vm must be [host, index]");
        }
        e.vm = VmId{v[0], v[1]};
        const auto f = j.at("factors").get<std::vector<double>>();
        if (f.size() != 4) {
            throw std::invalid_argument("vm_degrade needs 4 factors");
        }
        e.vm_factors = {f[0], f[1], f[2], f[3]};
    } else {
        throw std::invalid_argument("unknown event kind '" + kind + "'");
    }
}

}  // namespace agentsched::resched
