#include "agentsched/ara/messages.hpp"

#include <algorithm>

namespace agentsched::ara {

namespace {

nlohmann::json request_json(const cloud::UserRequest& r) {
    double wl = 0.0;
    for (const auto& t : r.tasks) {
        wl += t.workload;
    }
    nlohmann::json j{{"user", r.user_id}, {"tasks", r.tasks.size()}, {"workload", wl}};
    if (r.deadline < cloud::unbounded_deadline) {
        j["deadline"] = r.deadline;
    } else {
        j["deadline"] = "unbounded";
    }
    return j;
}

nlohmann::json snapshot_json(const VmSnapshot& s) {
    return {{"vm", cloud::to_string(s.vm)}, {"cpu", s.cpu}, {"available", s.available}};
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

VmSnapshot snapshot_of(const cloud::VmDescriptor& vm) {
    VmSnapshot s{vm.vm_id, vm.cpu, vm.ram, vm.storage, vm.bandwidth, 0.0};
    for (const auto& r : vm.reservations) {
        if (r.active) {
            s.available = std::max(s.available, r.end);
        }
    }
    return s;
}

void to_json(nlohmann::json& j, const Payload& p) {
    j = std::visit(
        overloaded{
            [](const std::monostate&) { return nlohmann::json{{"type", "none"}}; },
            [](const SyncVm& m) {
                return nlohmann::json{{"type", "sync"}, {"host", m.host}, {"snapshot", snapshot_json(m.snapshot)}};
            },
            [](const RecommendRequest& m) {
                return nlohmann::json{{"type", "recommend_request"}, {"request", request_json(m.request)}};
            },
            [](const Recommendation& m) {
                nlohmann::json vms = nlohmann::json::array();
                for (const auto& v : m.vms) {
                    vms.push_back(cloud::to_string(v.snapshot.vm));
                }
                return nlohmann::json{{"type", "recommendation"}, {"user", m.user}, {"vms", vms},
                                      {"impossible", m.impossible}};
            },
            [](const Finalize& m) {
                return nlohmann::json{{"type", "finalize"},
                                      {"recommendation", m.recommendation},
                                      {"accepted", m.accepted ? nlohmann::json(cloud::to_string(*m.accepted))
                                                              : nlohmann::json(nullptr)}};
            },
            [](const CallForProposal& m) {
                return nlohmann::json{{"type", "cfp"}, {"vm", cloud::to_string(m.vm)},
                                      {"request", request_json(m.request)}};
            },
            [](const Proposal& m) {
                return nlohmann::json{{"type", "proposal"}, {"user", m.user}, {"vm", cloud::to_string(m.vm)},
                                      {"start", m.start}, {"completion", m.completion}};
            },
            [](const Decline& m) {
                return nlohmann::json{{"type", "decline"}, {"vm", cloud::to_string(m.vm)}, {"reason", m.reason}};
            },
            [](const ContractNotice& m) {
                return nlohmann::json{{"type", "contract"}, {"user", m.user}, {"ok", m.ok},
                                      {"vm", cloud::to_string(m.vm)}, {"start", m.start}, {"end", m.end},
                                      {"relocated", m.relocated}};
            },
            [](const ReslotRequest& m) {
                return nlohmann::json{{"type", "reslot_request"},
                                      {"user", m.user},
                                      {"scope", m.scope == Reslot::same_vm ? "same_vm" : "same_host"},
                                      {"current", cloud::to_string(m.current)}};
            },
            [](const ReslotResult& m) {
                return nlohmann::json{{"type", "reslot_result"}, {"user", m.user}, {"resolved", m.resolved},
                                      {"vm", cloud::to_string(m.vm)}, {"start", m.start}, {"end", m.end}};
            },
            [](const CannotSatisfy& m) {
                return nlohmann::json{{"type", "cannot_satisfy"}, {"user", m.user}, {"vm", cloud::to_string(m.vm)}};
            },
        },
        p);
}

}  // namespace agentsched::ara
