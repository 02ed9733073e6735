#include "agentsched/ara/supervise_agent.hpp"

namespace agentsched::ara {

void SuperviseAgent::handle(const Message& msg) {
    if (const auto* sync = std::get_if<SyncVm>(&msg.body)) {
        registry_.sync_vm(sync->host, sync->snapshot);
        return;
    }
    if (const auto* req = std::get_if<RecommendRequest>(&msg.body)) {
        const auto conv = msg.conversation;
        Recommendation rec;
        rec.conversation = conv;
        rec.user = req->request.user_id;
        rec.vms = registry_.recommend(req->request, params_.theta, now(), conv);
        rec.impossible = rec.vms.empty() && !registry_.any_capacity_fit(req->request);
        if (!rec.vms.empty()) {
            for (const auto& v : rec.vms) {
                trace("lease", {{"vm", cloud::to_string(v.snapshot.vm)},
                                {"conversation", conv},
                                {"user", rec.user},
                                {"state", "busy"}});
            }
            lease_timers_[conv] = set_timer(params_.lease_timeout, [this, conv] {
                lease_timers_.erase(conv);
                if (registry_.outstanding(conv)) {
                    ++expired_;
                    release(conv, "expired");
                }
            });
        }
        send(msg.from, bdi::Performative::inform, conv, std::move(rec));
        return;
    }
    if (const auto* fin = std::get_if<Finalize>(&msg.body)) {
        auto it = lease_timers_.find(fin->recommendation);
        if (it != lease_timers_.end()) {
            cancel_timer(it->second);
            lease_timers_.erase(it);
        }
        release(fin->recommendation, fin->accepted ? "accepted" : "none");
        return;
    }
}

void SuperviseAgent::release(bdi::ConversationId conversation, const char* reason) {
    for (VmId vm : registry_.finalize(conversation)) {
        trace("lease",
              {{"vm", cloud::to_string(vm)}, {"conversation", conversation}, {"state", "ready"}, {"reason", reason}});
    }
}

}  // namespace agentsched::ara
