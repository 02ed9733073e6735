#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "agentsched/resched/contract.hpp"
#include "agentsched/resched/events.hpp"
#include "agentsched/resched/host_rescheduling.hpp"
#include "agentsched/resched/user_rescheduling.hpp"
#include "agentsched/sim/rng.hpp"
#include "ara_rig.hpp"
#include "support.hpp"

using namespace agentsched;
using namespace agentsched::resched;
using testing_support::make_datacenter;
using testing_support::make_request;
using testing_support::Rig;

namespace {

std::vector<UserId> iota_users(int n) {
    std::vector<UserId> ids;
    for (int i = 0; i < n; ++i) {
        ids.push_back(i);
    }
    return ids;
}

std::vector<VmId> grid_vms(int hosts, int per_host) {
    std::vector<VmId> ids;
    for (int h = 0; h < hosts; ++h) {
        for (int i = 0; i < per_host; ++i) {
            ids.push_back({h, i});
        }
    }
    return ids;
}

UncertainEvent user_event(EventKind kind, UserId user, double at) {
    UncertainEvent e;
    e.kind = kind;
    e.user = user;
    e.fire_at = at;
    return e;
}

UncertainEvent vm_event(VmId vm, double at, cloud::VmFactors f) {
    UncertainEvent e;
    e.kind = EventKind::vm_degrade;
    e.vm = vm;
    e.fire_at = at;
    e.vm_factors = f;
    return e;
}

}  // namespace

// --- generate_events ----------------------------------------------------------

TEST(GenerateEvents, ZeroProbabilityGivesNothing) {
    sim::RngStream rng(1, sim::Stream::events);
    const auto users = iota_users(100);
    const auto vms = grid_vms(3, 4);
    EXPECT_TRUE(generate_events(users, vms, 0.0, 500.0, {}, rng).empty());
}

TEST(GenerateEvents, CertainProbabilityHitsEveryTargetOnce) {
    sim::RngStream rng(1, sim::Stream::events);
    const auto users = iota_users(100);
    const auto vms = grid_vms(3, 4);
    const EventRanges ranges;
    const auto events = generate_events(users, vms, 1.0, 500.0, ranges, rng);
    ASSERT_EQ(events.size(), 112u);
    std::set<UserId> seen_users;
    std::set<VmId> seen_vms;
    for (const auto& e : events) {
        EXPECT_GE(e.fire_at, 0.0);
        EXPECT_LT(e.fire_at, 500.0);
        if (e.user) {
            EXPECT_TRUE(seen_users.insert(*e.user).second);
            EXPECT_NE(e.kind, EventKind::vm_degrade);
        } else {
            EXPECT_TRUE(seen_vms.insert(*e.vm).second);
            EXPECT_EQ(e.kind, EventKind::vm_degrade);
        }
    }
    EXPECT_EQ(seen_users.size(), 100u);
    EXPECT_EQ(seen_vms.size(), 12u);
    EXPECT_NO_THROW(validate_events(events, ranges));
}

TEST(GenerateEvents, HalfProbabilityIsBinomial) {
    const auto users = iota_users(10000);
    const double mean = 5000.0;
    const double sigma = std::sqrt(10000.0 * 0.25);
    int within = 0;
    double total = 0.0;
    constexpr int seeds = 30;
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
        sim::RngStream rng(seed, sim::Stream::events);
        const auto events = generate_events(users, {}, 0.5, 1000.0, {}, rng);
        const double n = static_cast<double>(events.size());
        total += n;
        within += std::abs(n - mean) <= 3.0 * sigma ? 1 : 0;
    }
    // 3 sigma covers 99.7%: allow one stray seed out of 30
    EXPECT_GE(within, seeds - 1);
    EXPECT_LE(std::abs(total / seeds - mean), 3.0 * sigma / std::sqrt(static_cast<double>(seeds)));
}

TEST(GenerateEvents, KindsSplitEvenlyBetweenInflateAndCut) {
    sim::RngStream rng(4, sim::Stream::events);
    const auto events = generate_events(iota_users(4000), {}, 1.0, 10.0, {}, rng);
    int inflate = 0;
    for (const auto& e : events) {
        inflate += e.kind == EventKind::task_inflate ? 1 : 0;
    }
    EXPECT_NEAR(inflate, 2000, 3 * std::sqrt(1000.0));
}

// A larger probability selects a superset with identical parameters.
TEST(GenerateEventsProperty, HigherProbabilityIsASuperset) {
    const auto users = iota_users(200);
    const auto vms = grid_vms(2, 5);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        sim::RngStream lo_rng(seed, sim::Stream::events);
        sim::RngStream hi_rng(seed, sim::Stream::events);
        const auto lo = generate_events(users, vms, 0.3, 100.0, {}, lo_rng);
        const auto hi = generate_events(users, vms, 0.7, 100.0, {}, hi_rng);
        auto key = [](const UncertainEvent& e) {
            return std::make_tuple(e.user.value_or(-1), e.vm ? e.vm->host : -1, e.vm ? e.vm->index : -1,
                                   static_cast<int>(e.kind), e.fire_at, e.deadline_cut, e.task_factors.workload,
                                   e.vm_factors.cpu);
        };
        std::set<decltype(key(lo[0]))> hi_keys;
        for (const auto& e : hi) {
            hi_keys.insert(key(e));
        }
        ASSERT_LE(lo.size(), hi.size());
        for (const auto& e : lo) {
            ASSERT_TRUE(hi_keys.contains(key(e))) << "seed " << seed;
        }
    }
}

TEST(GenerateEvents, RejectsBadArguments) {
    sim::RngStream rng(1, sim::Stream::events);
    const auto users = iota_users(3);
    EXPECT_THROW((void)generate_events(users, {}, 1.5, 10.0, {}, rng), std::invalid_argument);
    EXPECT_THROW((void)generate_events(users, {}, 0.5, -1.0, {}, rng), std::invalid_argument);
}

TEST(ValidateEvents, RejectsDuplicatesAndOutOfRange) {
    const EventRanges ranges;
    auto a = user_event(EventKind::deadline_cut, 1, 5.0);
    a.deadline_cut = 200.0;
    auto b = a;
    b.event_id = 1;
    EXPECT_THROW(validate_events(std::vector<UncertainEvent>{a, b}, ranges), std::invalid_argument);
    auto c = a;
    c.deadline_cut = 50.0;
    EXPECT_THROW(validate_events(std::vector<UncertainEvent>{c}, ranges), std::invalid_argument);
    auto d = vm_event({0, 0}, 1.0, {0.4, 0.6, 0.6, 0.6});
    EXPECT_THROW(validate_events(std::vector<UncertainEvent>{d}, ranges), std::invalid_argument);
    EXPECT_NO_THROW(validate_events(std::vector<UncertainEvent>{a}, ranges));
}

TEST(EventJson, RoundTrips) {
    sim::RngStream rng(8, sim::Stream::events);
    const auto events = generate_events(iota_users(20), grid_vms(2, 2), 1.0, 50.0, {}, rng);
    const nlohmann::json j = events;
    const auto back = j.get<std::vector<UncertainEvent>>();
    ASSERT_EQ(back.size(), events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        EXPECT_EQ(nlohmann::json(back[i]), nlohmann::json(events[i]));
    }
    EXPECT_THROW((void)nlohmann::json({{"id", 0}, {"fire_at", 1.0}, {"kind", "meteor"}}).get<UncertainEvent>(),
                 std::invalid_argument);
    EXPECT_THROW(
        (void)nlohmann::json({{"id", 0}, {"fire_at", 1.0}, {"kind", "deadline_cut"}, {"user", 1}, {"cut", 200}, {"x", 1}})
            .get<UncertainEvent>(),
        std::invalid_argument);
}

// --- apply_event ------------------------------------------------------------------

TEST(ApplyEvent, InflateScalesWorkload) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0}}), {make_request(0, {10000.0})});
    auto e = user_event(EventKind::task_inflate, 0, 0.0);
    e.task_factors = {1.5, 1.0, 1.0, 1.0};
    const auto res = apply_event(w, e, nullptr);
    EXPECT_FALSE(res.vacuous);
    EXPECT_EQ(w.request(0).tasks[0].workload, 15000.0);
}

TEST(ApplyEvent, DeadlineCut) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0}}), {make_request(0, {10000.0}, 2000.0)});
    auto e = user_event(EventKind::deadline_cut, 0, 0.0);
    e.deadline_cut = 1000.0;
    apply_event(w, e, nullptr);
    EXPECT_EQ(w.request(0).deadline, 1000.0);
}

TEST(ApplyEvent, DegradeRecomputesFutureCompletions) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{2000.0}}), {make_request(0, {20000.0}), make_request(1, {10000.0})});
    w.move(0, {0, 0}, 0.0);
    w.move(1, {0, 0}, 10.0);
    const auto res = apply_event(w, vm_event({0, 0}, 0.0, {0.5, 1.0, 1.0, 1.0}), nullptr);
    EXPECT_EQ(w.vm({0, 0}).cpu, 1000.0);
    EXPECT_EQ(w.active_reservation(0)->end, 20.0);
    EXPECT_EQ(w.active_reservation(1)->start, 20.0);
    EXPECT_EQ(w.active_reservation(1)->end, 30.0);
    EXPECT_EQ(res.affected, (std::vector<UserId>{0, 1}));
}

TEST(ApplyEvent, EventOnFinishedBatchIsVacuousAndSkipsTheReactor) {
    struct Counting final : EventReactor {
        int calls = 0;
        void on_user_event(const UncertainEvent&, const cloud::MutationResult&) override { ++calls; }
        void on_vm_event(const UncertainEvent&, const cloud::MutationResult&) override { ++calls; }
    } reactor;
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0}}), {make_request(0, {1000.0})});
    w.move(0, {0, 0}, 0.0);
    k.run_until_quiescent(1e9);
    auto e = user_event(EventKind::deadline_cut, 0, k.now());
    e.deadline_cut = 100.0;
    EXPECT_TRUE(apply_event(w, e, &reactor).vacuous);
    EXPECT_EQ(reactor.calls, 0);
}

// A VM event touches only the ledger of that VM.
TEST(ApplyEventProperty, VmEventIsolation) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        sim::RngStream rng(seed, sim::Stream::scenario);
        sim::Kernel k;
        std::vector<cloud::UserRequest> users;
        for (int u = 0; u < 8; ++u) {
            users.push_back(make_request(u, {rng.uniform(10000.0, 40000.0)}));
        }
        cloud::World w(k, make_datacenter({{1000.0, 1500.0}, {2000.0}}), users);
        const auto vms = w.vm_ids();
        for (int u = 0; u < 8; ++u) {
            const auto v = vms[static_cast<std::size_t>(rng.uniform_int(0, 2))];
            w.move(u, v, w.quote(u, v, cloud::Placement::append).start);
        }
        const double at = rng.uniform(0.0, 30.0);
        k.run_until_quiescent(at);
        const auto target = vms[static_cast<std::size_t>(rng.uniform_int(0, 2))];
        std::map<VmId, std::vector<std::tuple<UserId, double, double, bool>>> before;
        for (auto id : vms) {
            for (const auto& r : w.vm(id).reservations) {
                before[id].emplace_back(r.user_id, r.start, r.end, r.active);
            }
        }
        apply_event(w, vm_event(target, at, {0.6, 0.6, 0.6, 0.6}), nullptr);
        for (auto id : vms) {
            if (id == target) {
                continue;
            }
            std::vector<std::tuple<UserId, double, double, bool>> after;
            for (const auto& r : w.vm(id).reservations) {
                after.emplace_back(r.user_id, r.start, r.end, r.active);
            }
            ASSERT_EQ(after, before[id]) << "seed " << seed;
        }
    }
}

// --- validate_contract ------------------------------------------------------------

TEST(ValidateContract, HoldsWithoutEvents) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0}}), {make_request(0, {10000.0}, 50.0)});
    w.move(0, {0, 0}, 0.0);
    EXPECT_TRUE(validate_contract(w, 0));
    const auto* r = w.active_reservation(0);
    EXPECT_TRUE(validate_contract(*r, w.remaining_request(0), w.vm({0, 0}), 0.0));
}

TEST(ValidateContract, DeadlineCutBelowCompletion) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0}}), {make_request(0, {10000.0}, 50.0)});
    w.move(0, {0, 0}, 0.0);
    w.cut_deadline(0, 45.0);
    EXPECT_FALSE(validate_contract(w, 0));
    EXPECT_FALSE(validate_contract(*w.active_reservation(0), w.remaining_request(0), w.vm({0, 0}), 0.0));
}

TEST(ValidateContract, HalvedCpuWithEnoughSlack) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0}}), {make_request(0, {10000.0}, 50.0)});
    w.move(0, {0, 0}, 0.0);
    w.degrade_vm({0, 0}, {0.5, 1.0, 1.0, 1.0});
    EXPECT_EQ(w.active_reservation(0)->end, 20.0);
    EXPECT_TRUE(validate_contract(w, 0));
}

TEST(ValidateContract, NoReservationIsInvalid) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0}}), {make_request(0, {10000.0}, 50.0)});
    EXPECT_FALSE(validate_contract(w, 0));
}

// --- host side of i1 and i2 ------------------------------------------------------

TEST(SameVmSlot, InflatedBatchStillFitsWithLaterEnd) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0}}), {make_request(0, {10000.0}, 20.0)});
    w.move(0, {0, 0}, 0.0);
    w.inflate_tasks(0, {1.5, 1.0, 1.0, 1.0});
    const auto q = same_vm_slot(w, 0, {0, 0});
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(q->completion, 15.0);
}

TEST(SameVmSlot, UsesAnEarlierGapWhenTheTailIsTooLate) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0}}),
                   {make_request(0, {10000.0}), make_request(1, {10000.0}), make_request(2, {10000.0}, 25.0)});
    w.move(0, {0, 0}, 0.0);   // [0,10]
    w.move(1, {0, 0}, 30.0);  // [30,40]
    w.move(2, {0, 0}, 40.0);  // [40,50], past its deadline of 25
    EXPECT_FALSE(validate_contract(w, 2));
    const auto q = same_vm_slot(w, 2, {0, 0});
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(q->start, 10.0);
    EXPECT_EQ(q->completion, 20.0);
}

TEST(SameVmSlot, DeadlineCutBelowAnySlot) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0}}), {make_request(0, {10000.0}, 50.0)});
    w.move(0, {0, 0}, 0.0);
    w.cut_deadline(0, 45.0);
    EXPECT_FALSE(same_vm_slot(w, 0, {0, 0}).has_value());
}

TEST(SameVmSlot, DegradedBeyondSlack) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0}}), {make_request(0, {10000.0}, 15.0)});
    w.move(0, {0, 0}, 0.0);
    w.degrade_vm({0, 0}, {0.5, 1.0, 1.0, 1.0});
    EXPECT_FALSE(same_vm_slot(w, 0, {0, 0}).has_value());
}

TEST(BestSibling, IdleSiblingResolves) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0, 2000.0, 1500.0}}), {make_request(0, {10000.0}, 8.0)});
    w.move(0, {0, 0}, 0.0);
    const auto q = best_sibling(w, 0, {0, 0});
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(q->vm, (VmId{0, 1}));
    EXPECT_EQ(q->completion, 5.0);
}

TEST(BestSibling, LoneVmHasNoSiblings) {
    sim::Kernel k;
    cloud::World w(k, make_datacenter({{1000.0}, {5000.0}}), {make_request(0, {10000.0}, 8.0)});
    w.move(0, {0, 0}, 0.0);
    EXPECT_FALSE(best_sibling(w, 0, {0, 0}).has_value());
}

// Two batches invalidated by one degradation: the host handles them in id
// order and the second is quoted against the first's new contract.
TEST(HostAbsorb, TwoUsersOnADegradedVm) {
    auto u0 = make_request(0, {20000.0}, 12.0);
    auto u1 = make_request(1, {20000.0}, 15.0);
    Rig rig(make_datacenter({{2000.0, 3000.0}}), {u0, u1});
    rig.world.move(0, {0, 0}, 0.0);   // [0,10]
    rig.world.move(1, {0, 0}, 10.0);  // [10,20]
    rig.kernel.schedule(1.0, sim::EntryKind::uncertain_event, [&] {
        apply_event(rig.world, vm_event({0, 0}, 1.0, {0.5, 1.0, 1.0, 1.0}), &rig.system, &rig.log);
    });
    rig.kernel.run_until_quiescent(1.5);

    const auto absorbed = rig.records("absorb");
    ASSERT_EQ(absorbed.size(), 2u);
    EXPECT_EQ(absorbed[0]["detail"]["user"], 0);
    EXPECT_EQ(absorbed[1]["detail"]["user"], 1);
    // u0: 18000 MI left at t=1, sibling at 3000 MIPS -> [1,7]
    ASSERT_EQ(rig.world.active_vm(0), (VmId{0, 1}));
    EXPECT_DOUBLE_EQ(rig.world.active_reservation(0)->end, 7.0);
    // u1 cannot make 15 on the slowed VM; on the sibling it queues behind u0
    ASSERT_EQ(rig.world.active_vm(1), (VmId{0, 1}));
    EXPECT_DOUBLE_EQ(rig.world.active_reservation(1)->start, 7.0);
    EXPECT_LE(rig.world.active_reservation(1)->end, 15.0);
    rig.kernel.run_until_quiescent(1e9);
    EXPECT_EQ(rig.world.status(0), cloud::BatchStatus::completed);
    EXPECT_EQ(rig.world.status(1), cloud::BatchStatus::completed);
}

// --- user side: the i1 -> i2 -> i3 cycle -----------------------------------------

TEST(UserCycle, FallsThroughToAnotherHost) {
    // theta 1 puts the batch on the slow VM (tie at availability 0)
    Rig rig(make_datacenter({{1000.0}, {2000.0}}), {make_request(0, {20000.0}, 100.0)},
            ara::AraParams{1, 1.0, 5.0, 10.0});
    rig.system.start();
    auto cut = user_event(EventKind::deadline_cut, 0, 5.0);
    cut.deadline_cut = 85.0;
    rig.kernel.schedule(5.0, sim::EntryKind::uncertain_event,
                        [&] { apply_event(rig.world, cut, &rig.system, &rig.log); });
    rig.kernel.run_until_quiescent(1e9);
    EXPECT_EQ(rig.world.status(0), cloud::BatchStatus::completed);
    EXPECT_EQ(rig.world.last_vm(0), (VmId{1, 0}));
    EXPECT_EQ(rig.intentions("user:0"), (std::vector<std::string>{"ara", "i1", "i2", "i3"}));
    EXPECT_EQ(rig.system.user(0).cycles_resolved(), 1);
    if (::testing::Test::HasFailure()) std::cerr << rig.out.str();
    EXPECT_EQ(rig.system.supervise().registry().ready_count(), 2u);
}

TEST(UserCycle, ResolvedOnTheSameVmNeedsNoFurtherSteps) {
    // Roughly u0 [0,10], u1 [10,20], u2 [20,23] on one VM. u1's deadline is cut out
    // of reach, so it fails at 15 and leaves a gap that u2 can use after its
    // own deadline is cut.
    std::vector<cloud::UserRequest> users{make_request(0, {10000.0}), make_request(1, {10000.0}, 100.0),
                                          make_request(2, {3000.0}, 100.0)};
    users[1].arrival = 0.5;
    users[2].arrival = 1.0;
    Rig rig(make_datacenter({{1000.0}}), users, ara::AraParams{1, 1.0, 5.0, 10.0});
    rig.system.start();
    auto cut1 = user_event(EventKind::deadline_cut, 1, 2.0);
    cut1.deadline_cut = 85.0;  // deadline 15
    auto cut2 = user_event(EventKind::deadline_cut, 2, 16.0);
    cut2.event_id = 1;
    cut2.deadline_cut = 79.0;  // deadline 21 < current end 23
    rig.kernel.schedule(2.0, sim::EntryKind::uncertain_event,
                        [&] { apply_event(rig.world, cut1, &rig.system, &rig.log); });
    rig.kernel.schedule(16.0, sim::EntryKind::uncertain_event, [&] {
        EXPECT_NEAR(rig.world.active_reservation(2)->start, 20.0, 0.1);  // plus message latency
        apply_event(rig.world, cut2, &rig.system, &rig.log);
    });
    rig.kernel.run_until_quiescent(1e9);
    EXPECT_EQ(rig.world.status(1), cloud::BatchStatus::failed);
    EXPECT_EQ(rig.world.status(2), cloud::BatchStatus::completed);
    EXPECT_EQ(rig.intentions("user:2"), (std::vector<std::string>{"ara", "i1"}));
    EXPECT_NEAR(*rig.world.progress(2)[0].finished_at, 19.0, 0.05);
    if (::testing::Test::HasFailure()) std::cerr << rig.out.str();
}

TEST(UserCycle, HostNoticeSkipsTheLocalStepsAndRetriesAfterALostRound) {
    // The degraded VM can no longer hold the batch and has no sibling; the
    // first recommendation request is lost, so the user retries.
    auto req = make_request(0, {20000.0}, 500.0, 1000.0);  // ram 1000 of 1740
    Rig rig(make_datacenter({{2000.0}, {1000.0}}), {req}, ara::AraParams{1, 1.0, 5.0, 10.0});
    bool dropped = false;
    rig.system.platform().set_drop_filter([&](const ara::Message& m) {
        if (!dropped && rig.kernel.now() > 1.0 && std::holds_alternative<ara::RecommendRequest>(m.body)) {
            dropped = true;
            return true;
        }
        return false;
    });
    rig.system.start();
    rig.kernel.schedule(2.0, sim::EntryKind::uncertain_event, [&] {
        apply_event(rig.world, vm_event({0, 0}, 2.0, {1.0, 0.5, 1.0, 1.0}), &rig.system, &rig.log);
    });
    rig.kernel.run_until_quiescent(1e9);
    EXPECT_TRUE(dropped);
    EXPECT_EQ(rig.world.status(0), cloud::BatchStatus::completed);
    EXPECT_EQ(rig.world.last_vm(0), (VmId{1, 0}));
    const auto names = rig.intentions("user:0");
    EXPECT_EQ(names, (std::vector<std::string>{"ara", "i3", "i1", "i2", "i3"}));
    EXPECT_FALSE(rig.records("retry").empty());
}

TEST(UserCycle, DeadlinePassingMidCycleFailsTheBatch) {
    Rig rig(make_datacenter({{1000.0}}), {make_request(0, {20000.0}, 100.0)}, ara::AraParams{1, 1.0, 5.0, 10.0});
    rig.system.start();
    auto cut = user_event(EventKind::deadline_cut, 0, 5.0);
    cut.deadline_cut = 90.0;  // deadline 10, but 15000 MI are left at 1000 MIPS
    rig.kernel.schedule(5.0, sim::EntryKind::uncertain_event,
                        [&] { apply_event(rig.world, cut, &rig.system, &rig.log); });
    rig.kernel.run_until_quiescent(1e9);
    EXPECT_EQ(rig.world.status(0), cloud::BatchStatus::failed);
    EXPECT_LE(rig.kernel.now(), 20.0);
    EXPECT_EQ(rig.system.supervise().registry().ready_count(), 1u);
    EXPECT_FALSE(rig.system.user(0).cycle().has_value());
}

TEST(Step, Names) {
    EXPECT_EQ(to_string(Step::i2), "i2");
    EXPECT_EQ(step_from_name("i3"), Step::i3);
    EXPECT_FALSE(step_from_name("i4").has_value());
}
