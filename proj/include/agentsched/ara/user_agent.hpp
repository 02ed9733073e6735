#pragma once

#include <optional>
#include <string>
#include <vector>

#include "agentsched/ara/messages.hpp"
#include "agentsched/ara/params.hpp"
#include "agentsched/cloud/world.hpp"
#include "agentsched/resched/events.hpp"
#include "agentsched/resched/user_rescheduling.hpp"

namespace agentsched::ara {

/// Acts for one batch: obtains a contract through recommendation rounds and
/// repairs it through the ranked rescheduling intentions when it breaks.
class UserAgent final : public AgentBase {
public:
    UserAgent(UserId user, cloud::World& world, const AraParams& params);

    /// The batch is submitted; starts the scheduling desire.
    void arrive();
    /// An uncertain event changed this batch's requirements or deadline.
    void perceive(const resched::UncertainEvent& e);
    /// The batch reached COMPLETED or FAILED.
    void on_terminal();

    [[nodiscard]] UserId user() const noexcept { return user_; }
    [[nodiscard]] const std::optional<resched::RescheduleCycle>& cycle() const noexcept { return cycle_; }
    [[nodiscard]] int cycles_resolved() const noexcept { return cycles_resolved_; }

protected:
    void handle(const Message& msg) override;

private:
    struct Round {
        std::uint64_t generation = 0;
        bdi::ConversationId recommendation = 0;
        std::string purpose;
        std::vector<VmRef> recommended;
        std::vector<Proposal> proposals;
        std::vector<bdi::ConversationId> cfp_conversations;  // parallel to recommended
        std::vector<std::string> declines;
        int pending = 0;
    };

    void step();
    void finish_intention(std::uint64_t generation, bool resolved);
    [[nodiscard]] bool stale(std::uint64_t generation) const noexcept { return generation != generation_ || terminal_; }

    void plan_ara(const std::string& purpose);
    void plan_reslot(Reslot scope);
    void on_recommendation(std::uint64_t generation, const Message& msg);
    void on_cfp_reply(std::uint64_t generation, std::size_t index, const Message* msg);
    void decide();
    void close_round(const Proposal* chosen);

    void refresh_request_beliefs();
    void check_contract();
    void record_contract(VmId vm, double start, double end);
    void begin_cycle();

    UserId user_;
    cloud::World& world_;
    AraParams params_;
    bool terminal_ = false;
    bool busy_ = false;
    bool skip_local_ = false;
    std::uint64_t generation_ = 0;
    std::optional<sim::EntryId> retry_timer_;
    std::optional<Round> round_;
    std::optional<resched::RescheduleCycle> cycle_;
    std::optional<int> pending_event_;
    int cycles_resolved_ = 0;
};

}  // namespace agentsched::ara
