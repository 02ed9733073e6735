#include "agentsched/harness/metrics.hpp"

#include <algorithm>

namespace agentsched::harness {

double population_variance(const std::vector<double>& xs) {
    if (xs.empty()) {
        return 0.0;
    }
    double mean = 0.0;
    for (double x : xs) {
        mean += x;
    }
    mean /= static_cast<double>(xs.size());
    double acc = 0.0;
    for (double x : xs) {
        acc += (x - mean) * (x - mean);
    }
    return acc / static_cast<double>(xs.size());
}

RunMetrics compute_metrics(const cloud::World& world) {
    RunMetrics m;
    for (cloud::UserId u : world.user_ids()) {
        const auto& req = world.request(u);
        const auto& progress = world.progress(u);
        m.nt += req.tasks.size();
        for (const auto& p : progress) {
            if (!p.finished_at) {
                continue;
            }
            m.makespan = std::max(m.makespan, *p.finished_at);
            if (*p.finished_at <= req.deadline) {
                ++m.sn;
            }
        }
    }
    const auto ids = world.vm_ids();
    m.nv = ids.size();
    m.utilization.reserve(ids.size());
    for (cloud::VmId id : ids) {
        double busy = 0.0;
        if (m.makespan > 0.0) {
            for (const auto& r : world.vm(id).reservations) {
                const double end = std::min(r.end, std::min(m.makespan, r.active ? world.now() : r.end));
                const double start = std::max(0.0, r.start);
                if (end > start) {
                    busy += end - start;
                }
            }
        }
        m.utilization.push_back(m.makespan > 0.0 ? std::min(1.0, busy / m.makespan) : 0.0);
    }
    if (!m.utilization.empty()) {
        double sum = 0.0;
        for (double x : m.utilization) {
            sum += x;
        }
        m.mean_utilization = sum / static_cast<double>(m.utilization.size());
    }
    m.variance = population_variance(m.utilization);
    m.success_rate = m.nt == 0 ? 0.0 : static_cast<double>(m.sn) / static_cast<double>(m.nt);
    return m;
}

}  // namespace agentsched::harness
