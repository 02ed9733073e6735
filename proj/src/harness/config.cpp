#include "agentsched/harness/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "agentsched/baselines/allocators.hpp"

namespace agentsched::harness {

namespace {

using nlohmann::json;

const std::set<std::string> known_fields{
    "seed",          "hosts",        "vms_per_host",   "users",          "tasks_per_user",  "vm_cpu",
    "vm_ram",        "vm_storage",   "vm_bandwidth",   "task_workload",  "task_ram",        "task_storage",
    "task_bandwidth", "deadline",    "theta",          "arrival_window", "scheduler",       "event_probability",
    "latency",       "collect_timeout", "retry_period", "lease_timeout", "response_cost",   "event_ranges",
    "events",        "time_limit",      "horizon_scheduler"};

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

template <class T>
T get(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        fail(std::string("field '") + key + "' has the wrong type");
    }
}

Range range_from(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail("field '" + key + "' must be a two-number array [lo, hi]");
    }
    return Range{j[0].get<double>(), j[1].get<double>()};
}

IntRange int_range_from(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
        fail("field '" + key + "' must be a two-integer array [lo, hi]");
    }
    return IntRange{j[0].get<int>(), j[1].get<int>()};
}

void check_range(const Range& r, const char* name, bool positive) {
    if (!(r.lo <= r.hi)) {
        fail(std::string("range '") + name + "' has min > max");
    }
    if (positive ? !(r.lo > 0.0) : !(r.lo >= 0.0)) {
        fail(std::string("range '") + name + (positive ? "' must be positive" : "' must be non-negative"));
    }
}

void check_range(const IntRange& r, const char* name) {
    if (r.lo > r.hi) {
        fail(std::string("range '") + name + "' has min > max");
    }
    if (r.lo < 1) {
        fail(std::string("range '") + name + "' must be at least 1");
    }
}

json range_json(const Range& r) { return json::array({r.lo, r.hi}); }
json range_json(const IntRange& r) { return json::array({r.lo, r.hi}); }

}  // namespace

ScenarioConfig parse_config(const json& j) {
    if (!j.is_object()) {
        fail("config must be a JSON object");
    }
    for (const auto& [key, _] : j.items()) {
        if (!known_fields.contains(key)) {
            fail("unknown config field '" + key + "'");
        }
    }
    ScenarioConfig c;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) {
            fail("field 'seed' must be a non-negative integer");
        }
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("hosts")) c.hosts = get<int>(j, "hosts");
    if (j.contains("users")) c.users = get<int>(j, "users");
    if (j.contains("theta")) c.theta = get<int>(j, "theta");
    if (j.contains("vms_per_host")) c.vms_per_host = int_range_from(j["vms_per_host"], "vms_per_host");
    if (j.contains("tasks_per_user")) c.tasks_per_user = int_range_from(j["tasks_per_user"], "tasks_per_user");
    if (j.contains("vm_cpu")) c.vm_cpu = range_from(j["vm_cpu"], "vm_cpu");
    if (j.contains("vm_ram")) c.vm_ram = range_from(j["vm_ram"], "vm_ram");
    if (j.contains("vm_storage")) c.vm_storage = range_from(j["vm_storage"], "vm_storage");
    if (j.contains("vm_bandwidth")) c.vm_bandwidth = range_from(j["vm_bandwidth"], "vm_bandwidth");
    if (j.contains("task_workload")) c.task_workload = range_from(j["task_workload"], "task_workload");
    if (j.contains("task_ram")) c.task_ram = range_from(j["task_ram"], "task_ram");
    if (j.contains("task_storage")) c.task_storage = range_from(j["task_storage"], "task_storage");
    if (j.contains("task_bandwidth")) c.task_bandwidth = range_from(j["task_bandwidth"], "task_bandwidth");
    if (j.contains("arrival_window")) c.arrival_window = range_from(j["arrival_window"], "arrival_window");
    if (j.contains("deadline")) {
        const auto& d = j["deadline"];
        if (d.is_string()) {
            if (d.get<std::string>() != "unbounded") {
                fail("field 'deadline' must be \"unbounded\" or [lo, hi]");
            }
            c.deadline.reset();
        } else {
            c.deadline = range_from(d, "deadline");
        }
    }
    if (j.contains("scheduler")) c.scheduler = get<std::string>(j, "scheduler");
    if (j.contains("event_probability")) c.event_probability = get<double>(j, "event_probability");
    if (j.contains("horizon_scheduler")) c.horizon_scheduler = get<std::string>(j, "horizon_scheduler");
    if (j.contains("latency")) c.latency = get<double>(j, "latency");
    if (j.contains("collect_timeout")) c.collect_timeout = get<double>(j, "collect_timeout");
    if (j.contains("retry_period")) c.retry_period = get<double>(j, "retry_period");
    if (j.contains("lease_timeout")) c.lease_timeout = get<double>(j, "lease_timeout");
    if (j.contains("time_limit")) c.time_limit = get<double>(j, "time_limit");
    if (j.contains("response_cost")) {
        const auto& rc = j["response_cost"];
        if (!rc.is_object()) {
            fail("field 'response_cost' must be an object");
        }
        for (const auto& [key, _] : rc.items()) {
            if (key != "enabled" && key != "per_pair_cost") {
                fail("unknown response_cost field '" + key + "'");
            }
        }
        if (rc.contains("enabled")) c.response_cost.enabled = get<bool>(rc, "enabled");
        if (rc.contains("per_pair_cost")) c.response_cost.per_pair_cost = get<double>(rc, "per_pair_cost");
    }
    if (j.contains("event_ranges")) {
        const auto& er = j["event_ranges"];
        if (!er.is_object()) {
            fail("field 'event_ranges' must be an object");
        }
        for (const auto& [key, value] : er.items()) {
            if (key == "inflate") {
                c.event_ranges.inflate = range_from(value, "event_ranges.inflate");
            } else if (key == "degrade") {
                c.event_ranges.degrade = range_from(value, "event_ranges.degrade");
            } else if (key == "deadline_cut") {
                c.event_ranges.deadline_cut = range_from(value, "event_ranges.deadline_cut");
            } else {
                fail("unknown event_ranges field '" + key + "'");
            }
        }
    }
    if (j.contains("events")) {
        if (!j["events"].is_array()) {
            fail("field 'events' must be an array");
        }
        std::vector<resched::UncertainEvent> events;
        for (const auto& e : j["events"]) {
            try {
                events.push_back(e.get<resched::UncertainEvent>());
            } catch (const json::exception& ex) {
                fail(std::string("bad event: ") + ex.what());
            } catch (const std::invalid_argument& ex) {
                fail(std::string("bad event: ") + ex.what());
            }
        }
        c.events = std::move(events);
    }
    validate(c);
    return c;
}

void validate(const ScenarioConfig& c) {
    if (c.hosts < 1) fail("hosts must be at least 1");
    if (c.users < 0) fail("users must be non-negative");
    if (c.theta < 1) fail("theta must be at least 1");
    check_range(c.vms_per_host, "vms_per_host");
    check_range(c.tasks_per_user, "tasks_per_user");
    check_range(c.vm_cpu, "vm_cpu", true);
    check_range(c.vm_ram, "vm_ram", true);
    check_range(c.vm_storage, "vm_storage", true);
    check_range(c.vm_bandwidth, "vm_bandwidth", true);
    check_range(c.task_workload, "task_workload", true);
    check_range(c.task_ram, "task_ram", false);
    check_range(c.task_storage, "task_storage", false);
    check_range(c.task_bandwidth, "task_bandwidth", false);
    check_range(c.arrival_window, "arrival_window", false);
    if (c.deadline) check_range(*c.deadline, "deadline", true);
    if (c.scheduler != "ara" && !baselines::kind_from_name(c.scheduler)) {
        fail("scheduler must be one of ara, mct, met, min_min, round_robin");
    }
    if (c.horizon_scheduler != "self" && c.horizon_scheduler != "ara" &&
        !baselines::kind_from_name(c.horizon_scheduler)) {
        fail("horizon_scheduler must be self or a scheduler name");
    }
    if (!(c.event_probability >= 0.0 && c.event_probability <= 1.0)) fail("event_probability must lie in [0, 1]");
    if (!(c.latency >= 0.0)) fail("latency must be non-negative");
    if (!(c.collect_timeout > 0.0)) fail("collect_timeout must be positive");
    if (!(c.retry_period > 0.0)) fail("retry_period must be positive");
    if (!(c.lease_timeout > 0.0)) fail("lease_timeout must be positive");
    if (!(c.time_limit > 0.0)) fail("time_limit must be positive");
    if (!(c.response_cost.per_pair_cost >= 0.0)) fail("response_cost.per_pair_cost must be non-negative");
    check_range(c.event_ranges.inflate, "event_ranges.inflate", true);
    check_range(c.event_ranges.degrade, "event_ranges.degrade", true);
    check_range(c.event_ranges.deadline_cut, "event_ranges.deadline_cut", false);
    if (c.events) {
        try {
            resched::validate_events(*c.events, c.event_ranges);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail("cannot open config file '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        fail("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

json to_json(const ScenarioConfig& c) {
    json j{{"seed", c.seed},
           {"hosts", c.hosts},
           {"vms_per_host", range_json(c.vms_per_host)},
           {"users", c.users},
           {"tasks_per_user", range_json(c.tasks_per_user)},
           {"vm_cpu", range_json(c.vm_cpu)},
           {"vm_ram", range_json(c.vm_ram)},
           {"vm_storage", range_json(c.vm_storage)},
           {"vm_bandwidth", range_json(c.vm_bandwidth)},
           {"task_workload", range_json(c.task_workload)},
           {"task_ram", range_json(c.task_ram)},
           {"task_storage", range_json(c.task_storage)},
           {"task_bandwidth", range_json(c.task_bandwidth)},
           {"deadline", c.deadline ? range_json(*c.deadline) : json("unbounded")},
           {"theta", c.theta},
           {"arrival_window", range_json(c.arrival_window)},
           {"scheduler", c.scheduler},
           {"event_probability", c.event_probability},
           {"horizon_scheduler", c.horizon_scheduler},
           {"latency", c.latency},
           {"collect_timeout", c.collect_timeout},
           {"retry_period", c.retry_period},
           {"lease_timeout", c.lease_timeout},
           {"response_cost", {{"enabled", c.response_cost.enabled}, {"per_pair_cost", c.response_cost.per_pair_cost}}},
           {"event_ranges",
            {{"inflate", range_json(c.event_ranges.inflate)},
             {"degrade", range_json(c.event_ranges.degrade)},
             {"deadline_cut", range_json(c.event_ranges.deadline_cut)}}},
           {"time_limit", c.time_limit}};
    if (c.events) {
        j["events"] = *c.events;
    }
    return j;
}

std::string config_hash(const ScenarioConfig& c) {
    json j = to_json(c);
    j.erase("seed");
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace agentsched::harness
