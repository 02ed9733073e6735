#pragma once

#include <vector>

#include "agentsched/cloud/model.hpp"
#include "agentsched/harness/config.hpp"

namespace agentsched::harness {

struct Scenario {
    cloud::Datacenter datacenter;
    std::vector<cloud::UserRequest> users;  // ids 0..n-1, deadlines absolute
};

/// Draws hosts, VMs and user batches uniformly from the configured ranges
/// using the scenario stream of `config.seed`.
[[nodiscard]] Scenario generate_scenario(const ScenarioConfig& config);

}  // namespace agentsched::harness
