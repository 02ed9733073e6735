#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "agentsched/baselines/central_scheduler.hpp"
#include "agentsched/resched/events.hpp"

namespace agentsched::harness {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IntRange {
    int lo = 0;
    int hi = 0;
};

using resched::Range;

/// One experiment. Defaults are the full-scale scenario.
struct ScenarioConfig {
    std::uint64_t seed = 1;
    int hosts = 10;
    IntRange vms_per_host{10, 20};
    int users = 10000;
    IntRange tasks_per_user{5, 10};
    Range vm_cpu{500.0, 2500.0};
    Range vm_ram{1250.0, 1740.0};
    Range vm_storage{4.0, 10.0};
    Range vm_bandwidth{1000.0, 2000.0};
    Range task_workload{10000.0, 40000.0};
    Range task_ram{800.0, 1200.0};
    Range task_storage{1.0, 8.0};
    Range task_bandwidth{100.0, 500.0};
    std::optional<Range> deadline;  // relative to arrival; unset means unbounded
    int theta = 5;
    Range arrival_window{0.0, 100.0};
    std::string scheduler = "ara";
    double event_probability = 0.0;
    // Scheduler whose no-event makespan sets the window for generated events;
    // "self" uses the configured scheduler. A shared reference gives every
    // scheduler the same event list for a given seed and probability.
    std::string horizon_scheduler = "ara";
    double latency = 0.01;
    double collect_timeout = 1.0;
    double retry_period = 5.0;
    double lease_timeout = 10.0;
    baselines::ResponseCostModel response_cost;
    resched::EventRanges event_ranges;
    std::optional<std::vector<resched::UncertainEvent>> events;  // replay instead of generating
    double time_limit = 1e7;
};

/// Throws ConfigError on unknown fields, wrong types or invalid ranges.
[[nodiscard]] ScenarioConfig parse_config(const nlohmann::json& j);
[[nodiscard]] ScenarioConfig load_config(const std::string& path);
void validate(const ScenarioConfig& c);

[[nodiscard]] nlohmann::json to_json(const ScenarioConfig& c);

/// FNV-1a of the canonical JSON form with the seed left out, as 16 hex digits.
[[nodiscard]] std::string config_hash(const ScenarioConfig& c);

}  // namespace agentsched::harness
