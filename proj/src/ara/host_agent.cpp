#include "agentsched/ara/host_agent.hpp"

#include <algorithm>

#include "agentsched/ara/supervise_agent.hpp"
#include "agentsched/resched/contract.hpp"
#include "agentsched/resched/host_rescheduling.hpp"

namespace agentsched::ara {

void HostAgent::vm_changed(VmId vm) {
    send(supervise_id, bdi::Performative::inform, new_conversation(),
         SyncVm{host_, snapshot_of(world_.vm(vm))});
}

void HostAgent::handle(const Message& msg) {
    if (const auto* cfp = std::get_if<CallForProposal>(&msg.body);
        cfp != nullptr && msg.performative == bdi::Performative::request) {
        on_cfp(msg, *cfp);
    } else if (const auto* p = std::get_if<Proposal>(&msg.body);
               p != nullptr && msg.performative == bdi::Performative::accept) {
        on_accept(msg, *p);
    } else if (const auto* req = std::get_if<ReslotRequest>(&msg.body)) {
        on_reslot(msg, *req);
    }
    // REJECTs of our proposals need no action: nothing was held for them.
}

void HostAgent::on_cfp(const Message& msg, const CallForProposal& cfp) {
    const UserId user = msg.from.id;
    auto decline = [&](const char* reason) {
        send(msg.from, bdi::Performative::reject, msg.conversation, Decline{cfp.vm, reason});
    };
    if (!owns(cfp.vm)) {
        decline("unknown vm");
        return;
    }
    if (cloud::is_terminal(world_.status(user))) {
        decline("batch closed");
        return;
    }
    const auto q = world_.quote(user, cfp.vm, cloud::Placement::append);
    if (!world_.acceptable(user, q)) {
        decline("infeasible");
        return;
    }
    send(msg.from, bdi::Performative::propose, msg.conversation, Proposal{user, cfp.vm, q.start, q.completion});
}

void HostAgent::on_accept(const Message& msg, const Proposal& p) {
    const UserId user = msg.from.id;
    ContractNotice notice{user, false, p.vm, 0.0, 0.0, false};
    if (owns(p.vm) && !cloud::is_terminal(world_.status(user))) {
        // The ledger may have moved since the proposal; commit only if the
        // fresh quote still meets the deadline.
        const auto q = world_.quote(user, p.vm, cloud::Placement::append);
        if (world_.acceptable(user, q)) {
            if (const auto* r = world_.move(user, p.vm, q.start)) {
                notice.ok = true;
                notice.start = r->start;
                notice.end = r->end;
            }
        }
    }
    send(msg.from, bdi::Performative::inform, msg.conversation, notice);
}

std::optional<cloud::Quote> HostAgent::reslot(UserId user, Reslot scope, VmId current) {
    if (cloud::is_terminal(world_.status(user))) {
        return std::nullopt;
    }
    const auto q = scope == Reslot::same_vm ? resched::same_vm_slot(world_, user, current)
                                            : resched::best_sibling(world_, user, current);
    if (!q) {
        return std::nullopt;
    }
    if (world_.move(user, q->vm, q->start) == nullptr) {
        return std::nullopt;
    }
    return q;
}

void HostAgent::on_reslot(const Message& msg, const ReslotRequest& req) {
    const UserId user = msg.from.id;
    ReslotResult result{user, false, req.current, 0.0, 0.0};
    if (owns(req.current)) {
        if (const auto q = reslot(user, req.scope, req.current)) {
            result.resolved = true;
            result.vm = q->vm;
            if (const auto* r = world_.active_reservation(user)) {
                result.start = r->start;
                result.end = r->end;
            }
        }
    }
    send(msg.from, bdi::Performative::inform, msg.conversation, result);
}

void HostAgent::absorb(std::vector<UserId> users) {
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    for (UserId user : users) {
        if (cloud::is_terminal(world_.status(user)) || resched::validate_contract(world_, user)) {
            continue;
        }
        auto current = world_.active_vm(user);
        if (!current) {
            current = world_.last_vm(user);
        }
        if (!current || current->host != host_) {
            continue;
        }
        trace("absorb", {{"user", user}, {"vm", cloud::to_string(*current)}});
        auto q = reslot(user, Reslot::same_vm, *current);
        if (!q) {
            q = reslot(user, Reslot::same_host, *current);
        }
        if (q) {
            const auto* r = world_.active_reservation(user);
            send(user_agent_id(user), bdi::Performative::inform, new_conversation(),
                 ContractNotice{user, true, q->vm, r->start, r->end, true});
        } else {
            send(user_agent_id(user), bdi::Performative::inform, new_conversation(), CannotSatisfy{user, *current});
        }
    }
}

}  // namespace agentsched::ara
