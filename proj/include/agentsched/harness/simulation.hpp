#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "agentsched/ara/system.hpp"
#include "agentsched/baselines/central_scheduler.hpp"
#include "agentsched/harness/config.hpp"
#include "agentsched/harness/metrics.hpp"
#include "agentsched/harness/scenario.hpp"
#include "agentsched/sim/kernel.hpp"
#include "agentsched/sim/trace.hpp"

namespace agentsched::harness {

struct RunResult {
    RunMetrics metrics;
    double horizon = 0.0;  // event window used (0 without events)
    std::size_t events = 0;
    std::size_t vacuous_events = 0;
    double final_time = 0.0;
    bool hit_limit = false;
};

/// One run: scenario, scheduler, events and kernel. Constructed objects stay
/// inspectable after run() for tests.
class Simulation {
public:
    explicit Simulation(ScenarioConfig config, std::ostream* trace = nullptr);
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;
    ~Simulation();

    /// Re-check ledger non-overlap after every world mutation.
    void set_verify(bool on) { world_->set_verify(on); }

    RunResult run();

    [[nodiscard]] const ScenarioConfig& config() const noexcept { return config_; }
    [[nodiscard]] cloud::World& world() noexcept { return *world_; }
    [[nodiscard]] sim::Kernel& kernel() noexcept { return kernel_; }
    [[nodiscard]] ara::System* ara() noexcept { return ara_.get(); }
    [[nodiscard]] baselines::CentralScheduler* central() noexcept { return central_.get(); }
    [[nodiscard]] const std::vector<resched::UncertainEvent>& events() const noexcept { return events_; }

private:
    ScenarioConfig config_;
    sim::TraceLog trace_;
    sim::Kernel kernel_;
    std::unique_ptr<cloud::World> world_;
    std::unique_ptr<ara::System> ara_;
    std::unique_ptr<baselines::CentralScheduler> central_;
    std::vector<resched::UncertainEvent> events_;
    double horizon_ = 0.0;
    bool ran_ = false;
};

/// Makespan of the same configuration without events, run under the
/// horizon scheduler: the window in which generated events fire.
[[nodiscard]] double event_horizon(const ScenarioConfig& config);

/// Convenience wrapper: build, run, return the result.
[[nodiscard]] RunResult run_once(const ScenarioConfig& config, std::ostream* trace = nullptr);

}  // namespace agentsched::harness
