#include "agentsched/ara/user_agent.hpp"

#include "agentsched/ara/host_agent.hpp"
#include "agentsched/ara/selection.hpp"
#include "agentsched/ara/supervise_agent.hpp"
#include "agentsched/resched/contract.hpp"

namespace agentsched::ara {

namespace {

constexpr const char* schedule_desire = "schedule";
constexpr const char* reschedule_desire = "reschedule";

nlohmann::json vm_json(VmId vm) { return nlohmann::json::array({vm.host, vm.index}); }

}  // namespace

UserAgent::UserAgent(UserId user, cloud::World& world, const AraParams& params)
    : AgentBase(user_agent_id(user)), user_(user), world_(world), params_(params) {
    auto& d = deliberator();
    // An invalidated contract is more urgent than finding a first one.
    d.add_desire(schedule_desire, 1);
    d.add_desire(reschedule_desire, 2);
    d.add_intention(schedule_desire, "ara", 0, [this] { plan_ara("schedule"); });
    d.add_intention(reschedule_desire, "i1", 0, [this] { plan_reslot(Reslot::same_vm); });
    d.add_intention(reschedule_desire, "i2", 1, [this] { plan_reslot(Reslot::same_host); });
    d.add_intention(reschedule_desire, "i3", 2, [this] { plan_ara("i3"); });

    auto requirements_changed = [this](const std::string&, const nlohmann::json&, const nlohmann::json&) {
        check_contract();
    };
    beliefs().on_change("workload", requirements_changed);
    beliefs().on_change("deadline", requirements_changed);
    beliefs().on_change("contract_valid",
                        [this](const std::string&, const nlohmann::json&, const nlohmann::json& value) {
                            if (value == false) {
                                begin_cycle();
                            }
                        });
}

void UserAgent::arrive() {
    refresh_request_beliefs();
    deliberator().activate(schedule_desire);
    step();
}

void UserAgent::perceive(const resched::UncertainEvent& e) {
    if (terminal_) {
        return;
    }
    pending_event_ = e.event_id;
    refresh_request_beliefs();
    pending_event_.reset();
}

void UserAgent::on_terminal() {
    if (terminal_) {
        return;
    }
    terminal_ = true;
    ++generation_;
    busy_ = false;
    if (retry_timer_) {
        cancel_timer(*retry_timer_);
        retry_timer_.reset();
    }
    deliberator().deactivate(schedule_desire);
    deliberator().deactivate(reschedule_desire);
    cycle_.reset();
}

void UserAgent::refresh_request_beliefs() {
    const auto& req = world_.request(user_);
    double wl = 0.0;
    for (const auto& t : req.tasks) {
        wl += t.workload;
    }
    update_belief("workload", wl);
    if (req.deadline < cloud::unbounded_deadline) {
        update_belief("deadline", req.deadline);
    } else {
        update_belief("deadline", "unbounded");
    }
}

void UserAgent::check_contract() {
    if (terminal_ || beliefs().get("contract").is_null()) {
        return;
    }
    update_belief("contract_valid", resched::validate_contract(world_, user_));
}

void UserAgent::record_contract(VmId vm, double start, double end) {
    update_belief("contract", {{"vm", vm_json(vm)}, {"start", start}, {"end", end}});
    update_belief("contract_valid", true);
}

void UserAgent::begin_cycle() {
    if (terminal_) {
        skip_local_ = false;
        return;
    }
    cycle_ = resched::RescheduleCycle{user_, pending_event_, resched::Step::i1, 0, 0, skip_local_};
    deliberator().activate(reschedule_desire);
    if (skip_local_) {
        // The host already tried both local placements for this trigger.
        deliberator().exhaust(reschedule_desire, "i1");
        deliberator().exhaust(reschedule_desire, "i2");
    }
    skip_local_ = false;
    trace("cycle", {{"state", "begin"},
                    {"event", pending_event_ ? nlohmann::json(*pending_event_) : nlohmann::json(nullptr)},
                    {"skip_local", cycle_->skip_local_first_pass}});
    step();
}

void UserAgent::step() {
    if (terminal_ || busy_ || retry_timer_) {
        return;
    }
    auto* intention = deliberator().deliberate();
    if (intention == nullptr) {
        const auto* top = deliberator().top_desire();
        if (top == nullptr) {
            return;
        }
        const std::string name = top->name;
        if (name == reschedule_desire && cycle_) {
            ++cycle_->passes;
        }
        trace("retry", {{"desire", name}, {"after", params_.retry_period}});
        retry_timer_ = set_timer(params_.retry_period, [this, name] {
            retry_timer_.reset();
            if (terminal_ || !deliberator().active(name)) {
                return;
            }
            deliberator().reset(name);
            step();
        });
        return;
    }
    busy_ = true;
    ++generation_;
    if (intention->desire == reschedule_desire && cycle_) {
        ++cycle_->attempts;
        cycle_->current = resched::step_from_name(intention->name).value_or(resched::Step::i1);
    }
    trace("intention", {{"desire", intention->desire}, {"intention", intention->name}});
    // Copy: the plan may re-enter deliberation before returning.
    auto plan = intention->plan;
    plan();
}

void UserAgent::finish_intention(std::uint64_t generation, bool resolved) {
    if (stale(generation)) {
        return;
    }
    busy_ = false;
    const auto* running = deliberator().running();
    if (running == nullptr) {
        step();
        return;
    }
    const std::string desire = running->desire;
    const std::string name = running->name;
    if (resolved) {
        deliberator().deactivate(desire);
        if (desire == reschedule_desire) {
            ++cycles_resolved_;
            trace("cycle", {{"state", "resolved"}, {"by", name}});
            cycle_.reset();
        }
    } else {
        deliberator().exhaust(desire, name);
    }
    step();
}

void UserAgent::plan_reslot(Reslot scope) {
    const std::uint64_t gen = generation_;
    const auto& contract = beliefs().get("contract");
    if (contract.is_null()) {
        finish_intention(gen, false);
        return;
    }
    const VmId current{contract["vm"][0].get<int>(), contract["vm"][1].get<int>()};
    bdi::Listener<Payload> listener;
    listener.timeout = params_.collect_timeout;
    listener.on_result = [this, gen](const Message& m) {
        const auto* r = std::get_if<ReslotResult>(&m.body);
        if (r != nullptr && r->resolved) {
            record_contract(r->vm, r->start, r->end);
            finish_intention(gen, true);
        } else {
            finish_intention(gen, false);
        }
    };
    listener.on_timeout = [this, gen] { finish_intention(gen, false); };
    send(host_agent_id(current.host), bdi::Performative::request, new_conversation(),
         ReslotRequest{user_, scope, current}, std::move(listener));
}

void UserAgent::plan_ara(const std::string& purpose) {
    const std::uint64_t gen = generation_;
    const auto conv = new_conversation();
    Round round;
    round.generation = gen;
    round.recommendation = conv;
    round.purpose = purpose;
    round_ = std::move(round);
    bdi::Listener<Payload> listener;
    listener.timeout = params_.collect_timeout;
    listener.on_result = [this, gen](const Message& m) { on_recommendation(gen, m); };
    listener.on_timeout = [this, gen, conv] {
        if (round_ && round_->recommendation == conv) {
            round_.reset();
        }
        finish_intention(gen, false);
    };
    send(supervise_id, bdi::Performative::request, conv, RecommendRequest{world_.remaining_request(user_)},
         std::move(listener));
}

void UserAgent::on_recommendation(std::uint64_t generation, const Message& msg) {
    const auto* rec = std::get_if<Recommendation>(&msg.body);
    const bool current = round_ && round_->recommendation == msg.conversation && !stale(generation);
    if (rec == nullptr || msg.performative == bdi::Performative::failure) {
        if (current) {
            round_.reset();
        }
        finish_intention(generation, false);
        return;
    }
    if (!current) {
        if (!rec->vms.empty()) {
            send(supervise_id, bdi::Performative::inform, new_conversation(), Finalize{msg.conversation, {}});
        }
        return;
    }
    auto& round = *round_;
    round.recommended = rec->vms;
    if (rec->impossible) {
        trace("conversation", {{"conversation", round.recommendation}, {"purpose", round.purpose},
                               {"theta", params_.theta}, {"impossible", true}});
        round_.reset();
        world_.fail(user_);
        return;
    }
    if (rec->vms.empty()) {
        close_round(nullptr);
        finish_intention(generation, false);
        return;
    }
    const auto remaining = world_.remaining_request(user_);
    round.pending = static_cast<int>(rec->vms.size());
    round.cfp_conversations.reserve(rec->vms.size());
    for (std::size_t i = 0; i < rec->vms.size(); ++i) {
        round.cfp_conversations.push_back(new_conversation());
    }
    const auto rc = round.recommendation;
    for (std::size_t i = 0; i < rec->vms.size(); ++i) {
        const auto& ref = rec->vms[i];
        bdi::Listener<Payload> listener;
        listener.timeout = params_.collect_timeout;
        listener.on_result = [this, rc, i](const Message& m) {
            if (round_ && round_->recommendation == rc) {
                on_cfp_reply(round_->generation, i, &m);
            }
        };
        listener.on_timeout = [this, rc, i] {
            if (round_ && round_->recommendation == rc) {
                on_cfp_reply(round_->generation, i, nullptr);
            }
        };
        send(host_agent_id(ref.host), bdi::Performative::request, round.cfp_conversations[i],
             CallForProposal{ref.snapshot.vm, remaining}, std::move(listener));
    }
}

void UserAgent::on_cfp_reply(std::uint64_t, std::size_t index, const Message* msg) {
    auto& round = *round_;
    if (msg != nullptr && msg->performative == bdi::Performative::propose) {
        if (const auto* p = std::get_if<Proposal>(&msg->body)) {
            round.proposals.push_back(*p);
        }
    } else {
        round.declines.push_back(msg == nullptr ? "timeout" : "declined");
    }
    (void)index;
    if (--round.pending == 0) {
        decide();
    }
}

void UserAgent::decide() {
    auto& round = *round_;
    const auto gen = round.generation;
    auto conversation_of = [&](VmId vm) {
        for (std::size_t i = 0; i < round.recommended.size(); ++i) {
            if (round.recommended[i].snapshot.vm == vm) {
                return round.cfp_conversations[i];
            }
        }
        return bdi::ConversationId{0};
    };
    if (stale(gen) || round.proposals.empty()) {
        for (const auto& p : round.proposals) {
            send(host_agent_id(p.vm.host), bdi::Performative::reject, conversation_of(p.vm), Decline{p.vm, "withdrawn"});
        }
        close_round(nullptr);
        finish_intention(gen, false);
        return;
    }
    const Proposal best = select_best(round.proposals);
    for (const auto& p : round.proposals) {
        if (p.vm != best.vm) {
            send(host_agent_id(p.vm.host), bdi::Performative::reject, conversation_of(p.vm),
                 Decline{p.vm, "not selected"});
        }
    }
    const auto rc = round.recommendation;
    bdi::Listener<Payload> listener;
    listener.timeout = params_.collect_timeout;
    listener.on_result = [this, rc, gen, best](const Message& m) {
        const auto* notice = std::get_if<ContractNotice>(&m.body);
        const bool ok = notice != nullptr && notice->ok;
        if (ok) {
            record_contract(notice->vm, notice->start, notice->end);
        }
        if (round_ && round_->recommendation == rc) {
            close_round(ok ? &best : nullptr);
        }
        finish_intention(gen, ok);
    };
    listener.on_timeout = [this, rc, gen] {
        if (round_ && round_->recommendation == rc) {
            close_round(nullptr);
        }
        finish_intention(gen, false);
    };
    send(host_agent_id(best.vm.host), bdi::Performative::accept, conversation_of(best.vm), best,
         std::move(listener));
}

void UserAgent::close_round(const Proposal* chosen) {
    auto& round = *round_;
    if (!round.recommended.empty()) {
        std::optional<VmId> accepted;
        if (chosen != nullptr) {
            accepted = chosen->vm;
        }
        send(supervise_id, bdi::Performative::inform, new_conversation(),
             Finalize{round.recommendation, accepted});
    }
    nlohmann::json recommended = nlohmann::json::array();
    for (const auto& r : round.recommended) {
        recommended.push_back(cloud::to_string(r.snapshot.vm));
    }
    nlohmann::json proposals = nlohmann::json::array();
    for (const auto& p : round.proposals) {
        proposals.push_back({{"vm", cloud::to_string(p.vm)}, {"start", p.start}, {"completion", p.completion}});
    }
    trace("conversation",
          {{"conversation", round.recommendation},
           {"purpose", round.purpose},
           {"theta", params_.theta},
           {"recommended", recommended},
           {"proposals", proposals},
           {"chosen", chosen != nullptr ? nlohmann::json(cloud::to_string(chosen->vm)) : nlohmann::json(nullptr)}});
    round_.reset();
}

void UserAgent::handle(const Message& msg) {
    if (const auto* notice = std::get_if<ContractNotice>(&msg.body); notice != nullptr && notice->relocated) {
        if (terminal_ || !notice->ok) {
            return;
        }
        if (deliberator().active(reschedule_desire)) {
            // The host repaired the contract while our own cycle was running.
            ++generation_;
            busy_ = false;
            if (retry_timer_) {
                cancel_timer(*retry_timer_);
                retry_timer_.reset();
            }
            deliberator().deactivate(reschedule_desire);
            cycle_.reset();
            trace("cycle", {{"state", "resolved"}, {"by", "host"}});
        }
        record_contract(notice->vm, notice->start, notice->end);
        return;
    }
    if (std::get_if<CannotSatisfy>(&msg.body) != nullptr) {
        if (terminal_) {
            return;
        }
        skip_local_ = true;
        update_belief("contract_valid", false);
        skip_local_ = false;
        return;
    }
}

}  // namespace agentsched::ara
