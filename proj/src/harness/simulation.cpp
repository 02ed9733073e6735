#include "agentsched/harness/simulation.hpp"

#include <algorithm>
#include <stdexcept>

namespace agentsched::harness {

double event_horizon(const ScenarioConfig& config) {
    ScenarioConfig quiet = config;
    quiet.event_probability = 0.0;
    quiet.events.reset();
    if (config.horizon_scheduler != "self") {
        quiet.scheduler = config.horizon_scheduler;
    }
    return run_once(quiet).metrics.makespan;
}

Simulation::Simulation(ScenarioConfig config, std::ostream* trace)
    : config_(std::move(config)), trace_(trace) {
    validate(config_);
    auto scenario = generate_scenario(config_);
    world_ = std::make_unique<cloud::World>(kernel_, std::move(scenario.datacenter), std::move(scenario.users),
                                            &trace_);
    if (config_.scheduler == "ara") {
        ara::AraParams params{config_.theta, config_.collect_timeout, config_.retry_period, config_.lease_timeout};
        ara_ = std::make_unique<ara::System>(*world_, config_.latency, params, &trace_);
    } else {
        central_ = std::make_unique<baselines::CentralScheduler>(
            *world_, *baselines::kind_from_name(config_.scheduler), config_.response_cost, &trace_);
    }
    if (config_.events) {
        events_ = *config_.events;
    } else if (config_.event_probability > 0.0) {
        horizon_ = event_horizon(config_);
        sim::RngStream rng(config_.seed, sim::Stream::events);
        events_ = resched::generate_events(world_->user_ids(), world_->vm_ids(), config_.event_probability, horizon_,
                                           config_.event_ranges, rng);
    }
    const auto users = world_->user_ids();
    for (const auto& e : events_) {
        if (e.user && !std::binary_search(users.begin(), users.end(), *e.user)) {
            throw ConfigError("event " + std::to_string(e.event_id) + " targets an unknown user");
        }
        if (e.vm && world_->datacenter().find(*e.vm) == nullptr) {
            throw ConfigError("event " + std::to_string(e.event_id) + " targets an unknown vm");
        }
    }
}

Simulation::~Simulation() = default;

RunResult Simulation::run() {
    if (ran_) {
        throw std::logic_error("a Simulation runs once");
    }
    ran_ = true;
    if (ara_) {
        ara_->start();
    } else {
        central_->start();
    }
    resched::EventReactor* reactor = ara_ ? static_cast<resched::EventReactor*>(ara_.get()) : central_.get();
    RunResult result;
    result.horizon = horizon_;
    result.events = events_.size();
    for (const auto& e : events_) {
        kernel_.schedule(e.fire_at, sim::EntryKind::uncertain_event, [this, e, reactor, &result] {
            if (resched::apply_event(*world_, e, reactor, &trace_).vacuous) {
                ++result.vacuous_events;
            }
        });
    }
    result.final_time = kernel_.run_until_quiescent(config_.time_limit);
    result.hit_limit = kernel_.hit_limit();
    result.metrics = compute_metrics(*world_);
    return result;
}

RunResult run_once(const ScenarioConfig& config, std::ostream* trace) {
    Simulation sim(config, trace);
    return sim.run();
}

}  // namespace agentsched::harness
