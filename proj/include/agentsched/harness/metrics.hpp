#pragma once

#include <cstddef>
#include <vector>

#include "agentsched/cloud/world.hpp"

namespace agentsched::harness {

struct RunMetrics {
    double makespan = 0.0;
    double variance = 0.0;
    double success_rate = 0.0;
    double mean_utilization = 0.0;
    std::vector<double> utilization;  // per VM, in vm id order
    std::size_t nt = 0;
    std::size_t sn = 0;
    std::size_t nv = 0;
};

/// Population variance; 0 for an empty input.
[[nodiscard]] double population_variance(const std::vector<double>& xs);

/// Objectives of a finished run. Utilization is the executed reservation time
/// inside [0, makespan] divided by the makespan.
[[nodiscard]] RunMetrics compute_metrics(const cloud::World& world);

}  // namespace agentsched::harness
