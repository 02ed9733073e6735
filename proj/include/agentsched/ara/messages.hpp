#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "agentsched/bdi/platform.hpp"
#include "agentsched/cloud/model.hpp"

namespace agentsched::ara {

using cloud::HostId;
using cloud::UserId;
using cloud::VmId;

/// What the supervise agent knows about one VM.
struct VmSnapshot {
    VmId vm;
    double cpu = 0.0;
    double ram = 0.0;
    double storage = 0.0;
    double bandwidth = 0.0;
    double available = 0.0;  // end of the last active reservation, 0 if none
};

[[nodiscard]] VmSnapshot snapshot_of(const cloud::VmDescriptor& vm);

/// host -> supervise
struct SyncVm {
    HostId host = 0;
    VmSnapshot snapshot;
};

/// user -> supervise
struct RecommendRequest {
    cloud::UserRequest request;
};

struct VmRef {
    HostId host = 0;
    VmSnapshot snapshot;
};

/// supervise -> user. `impossible` is set when no registered VM can hold the
/// batch's resource peaks at all.
struct Recommendation {
    bdi::ConversationId conversation = 0;
    UserId user = 0;
    std::vector<VmRef> vms;
    bool impossible = false;
};

/// user -> supervise, closes a recommendation round.
struct Finalize {
    bdi::ConversationId recommendation = 0;
    std::optional<VmId> accepted;
};

/// user -> host
struct CallForProposal {
    VmId vm;
    cloud::UserRequest request;
};

/// host -> user (PROPOSE), also carried back in ACCEPT
struct Proposal {
    UserId user = 0;
    VmId vm;
    double start = 0.0;
    double completion = 0.0;
};

/// host -> user (REJECT) or user -> host (REJECT of a proposal)
struct Decline {
    VmId vm;
    std::string reason;
};

/// host -> user. Answer to ACCEPT, or notice of a host-side relocation.
struct ContractNotice {
    UserId user = 0;
    bool ok = false;
    VmId vm;
    double start = 0.0;
    double end = 0.0;
    bool relocated = false;
};

enum class Reslot : std::uint8_t { same_vm, same_host };

/// user -> host, rescheduling intentions i1 and i2
struct ReslotRequest {
    UserId user = 0;
    Reslot scope = Reslot::same_vm;
    VmId current;
};

/// host -> user
struct ReslotResult {
    UserId user = 0;
    bool resolved = false;
    VmId vm;
    double start = 0.0;
    double end = 0.0;
};

/// host -> user after a VM-side event the host could not absorb.
struct CannotSatisfy {
    UserId user = 0;
    VmId vm;
};

using Payload = std::variant<std::monostate, SyncVm, RecommendRequest, Recommendation, Finalize, CallForProposal,
                             Proposal, Decline, ContractNotice, ReslotRequest, ReslotResult, CannotSatisfy>;

void to_json(nlohmann::json& j, const Payload& p);

using Message = bdi::Message<Payload>;
using AgentBase = bdi::Agent<Payload>;
using Platform = bdi::Platform<Payload>;

}  // namespace agentsched::ara
