#include "agentsched/cloud/world.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace agentsched::cloud {

namespace {

void advance_progress(std::vector<TaskProgress>& progress, const UserRequest& req, const Reservation& r,
                      double anchor, double cpu, double t) {
    double cursor = anchor;
    for (std::size_t i = 0; i < r.task_ids.size(); ++i) {
        auto& p = progress[static_cast<std::size_t>(r.task_ids[i])];
        if (p.finished_at) {
            continue;
        }
        const double finish = r.per_task_finish[i];
        const double workload = req.tasks[static_cast<std::size_t>(r.task_ids[i])].workload;
        if (finish <= t) {
            p.done = workload;
            p.finished_at = finish;
            cursor = finish;
            continue;
        }
        if (t > cursor) {
            p.done = std::min(workload, p.done + (t - cursor) * cpu);
        }
        break;
    }
}


bool finite_deadline(double deadline) noexcept {
    return deadline < unbounded_deadline / 2;
}

bool all_finished(const std::vector<TaskProgress>& progress) noexcept {
    return std::all_of(progress.begin(), progress.end(),
                       [](const TaskProgress& p) { return p.finished_at.has_value(); });
}

}  // namespace

World::World(sim::Kernel& kernel, Datacenter datacenter, std::vector<UserRequest> users, sim::TraceLog* trace)
    : kernel_(kernel), datacenter_(std::move(datacenter)), trace_(trace) {
    datacenter_.validate();
    batches_.reserve(users.size());
    for (auto& req : users) {
        if (req.tasks.empty()) {
            throw std::invalid_argument("user " + std::to_string(req.user_id) + " has no tasks");
        }
        if (!(req.deadline > 0.0)) {
            throw std::invalid_argument("user " + std::to_string(req.user_id) + " has a non-positive deadline");
        }
        for (std::size_t i = 0; i < req.tasks.size(); ++i) {
            const auto& t = req.tasks[i];
            if (t.task_id != static_cast<int>(i)) {
                throw std::invalid_argument("task ids of user " + std::to_string(req.user_id) +
                                            " must be 0..n-1 in order");
            }
            if (!(t.workload > 0.0) || t.ram < 0.0 || t.storage < 0.0 || t.bandwidth < 0.0) {
                throw std::invalid_argument("invalid task requirements for user " + std::to_string(req.user_id));
            }
        }
        if (!index_.emplace(req.user_id, batches_.size()).second) {
            throw std::invalid_argument("duplicate user id " + std::to_string(req.user_id));
        }
        Batch b;
        b.progress.resize(req.tasks.size());
        b.request = std::move(req);
        b.request.status = BatchStatus::pending;
        batches_.push_back(std::move(b));
    }
    for (auto& b : batches_) {
        arm_deadline(b);
    }
}

const VmDescriptor& World::vm(VmId id) const {
    const auto* v = datacenter_.find(id);
    if (v == nullptr) {
        throw std::out_of_range("unknown vm " + to_string(id));
    }
    return *v;
}

VmDescriptor& World::vm_mut(VmId id) {
    auto* v = datacenter_.find(id);
    if (v == nullptr) {
        throw std::out_of_range("unknown vm " + to_string(id));
    }
    return *v;
}

std::vector<VmId> World::vm_ids() const {
    std::vector<VmId> ids;
    for (const auto& host : datacenter_.hosts) {
        for (const auto& v : host.vms) {
            ids.push_back(v.vm_id);
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<UserId> World::user_ids() const {
    std::vector<UserId> ids;
    ids.reserve(index_.size());
    for (const auto& [id, _] : index_) {
        ids.push_back(id);
    }
    return ids;
}

World::Batch& World::batch(UserId user) {
    auto it = index_.find(user);
    if (it == index_.end()) {
        throw std::out_of_range("unknown user " + std::to_string(user));
    }
    return batches_[it->second];
}

const World::Batch& World::batch(UserId user) const {
    return const_cast<World*>(this)->batch(user);
}

const UserRequest& World::request(UserId user) const {
    return batch(user).request;
}

const std::vector<TaskProgress>& World::progress(UserId user) const {
    return batch(user).progress;
}

Reservation* World::active_in(VmDescriptor& vm, UserId user) {
    for (auto& r : vm.reservations) {
        if (r.active && r.user_id == user) {
            return &r;
        }
    }
    return nullptr;
}

const Reservation* World::active_in(const VmDescriptor& vm, UserId user) const {
    return const_cast<World*>(this)->active_in(const_cast<VmDescriptor&>(vm), user);
}

BatchStatus World::status(UserId user) const {
    const auto& b = batch(user);
    if (b.request.status == BatchStatus::scheduled && b.active_vm) {
        const auto* r = active_in(vm(*b.active_vm), user);
        if (r != nullptr && r->start <= now()) {
            return BatchStatus::executing;
        }
    }
    return b.request.status;
}

const Reservation* World::active_reservation(UserId user) const {
    const auto& b = batch(user);
    if (!b.active_vm) {
        return nullptr;
    }
    return active_in(vm(*b.active_vm), user);
}

std::optional<VmId> World::active_vm(UserId user) const {
    return batch(user).active_vm;
}

std::optional<VmId> World::last_vm(UserId user) const {
    return batch(user).last_vm;
}

UserRequest World::remaining_request(UserId user) const {
    const auto& b = batch(user);
    UserRequest rem;
    rem.user_id = b.request.user_id;
    rem.deadline = b.request.deadline;
    rem.arrival = b.request.arrival;
    rem.status = b.request.status;
    // Progress is only materialised on ledger changes; account for work done since.
    auto progress = b.progress;
    if (const auto* r = active_reservation(user); r != nullptr && r->start < now()) {
        advance_progress(progress, b.request, *r, b.anchor, vm(r->vm_id).cpu, now());
    }
    for (std::size_t i = 0; i < b.request.tasks.size(); ++i) {
        if (progress[i].finished_at) {
            continue;
        }
        TaskSpec t = b.request.tasks[i];
        t.workload = std::max(0.0, t.workload - progress[i].done);
        rem.tasks.push_back(t);
    }
    return rem;
}

std::vector<UserId> World::users_on(VmId id) const {
    std::vector<UserId> users;
    for (const auto& r : vm(id).reservations) {
        if (r.active) {
            users.push_back(r.user_id);
        }
    }
    std::sort(users.begin(), users.end());
    return users;
}

Quote World::quote(UserId user, VmId id, Placement placement) const {
    const auto& v = vm(id);
    const auto rem = remaining_request(user);
    const double t = now();
    double start = t;
    if (placement == Placement::append) {
        for (const auto& r : v.reservations) {
            if (r.active && r.user_id != user) {
                start = std::max(start, r.end);
            }
        }
    } else {
        for (const auto& r : v.reservations) {
            if (!r.active || r.user_id == user || r.end <= start) {
                continue;
            }
            if (completion_from(start, v.cpu, rem.tasks) <= r.start) {
                break;
            }
            start = std::max(start, r.end);
        }
    }
    return Quote{id, start, completion_from(start, v.cpu, rem.tasks)};
}

bool World::acceptable(UserId user, const Quote& q) const {
    const auto rem = remaining_request(user);
    return capacity_fits(vm(q.vm).capacity(), rem.tasks) && q.completion <= rem.deadline;
}

void World::advance(Batch& b, const Reservation& r, double t) {
    advance_progress(b.progress, b.request, r, b.anchor, vm(r.vm_id).cpu, t);
}

std::vector<UserId> World::rebuild(VmDescriptor& v, double t, const std::function<void()>& mutate) {
    for (const auto& r : v.reservations) {
        if (r.active && r.start < t) {
            advance(batch(r.user_id), r, t);
        }
    }
    if (mutate) {
        mutate();
    }

    std::vector<UserId> shifted;
    std::vector<UserId> done;
    double prev_end = -std::numeric_limits<double>::infinity();
    for (auto& r : v.reservations) {
        if (!r.active) {
            continue;
        }
        auto& b = batch(r.user_id);
        const double old_end = r.end;
        double base = t;
        if (r.start >= t) {
            r.start = std::max(r.start, prev_end);
            base = r.start;
        }
        std::vector<int> ids;
        std::vector<double> finishes;
        std::vector<TaskSpec> open;
        for (std::size_t i = 0; i < r.task_ids.size(); ++i) {
            const auto idx = static_cast<std::size_t>(r.task_ids[i]);
            if (b.progress[idx].finished_at) {
                ids.push_back(r.task_ids[i]);
                finishes.push_back(*b.progress[idx].finished_at);
            } else {
                TaskSpec spec = b.request.tasks[idx];
                spec.workload = std::max(0.0, spec.workload - b.progress[idx].done);
                open.push_back(spec);
            }
        }
        const auto open_finishes = cumulative_finishes(base, v.cpu, open);
        for (std::size_t i = 0; i < open.size(); ++i) {
            ids.push_back(open[i].task_id);
            finishes.push_back(open_finishes[i]);
        }
        r.task_ids = std::move(ids);
        r.per_task_finish = std::move(finishes);
        r.end = r.per_task_finish.empty() ? base : std::max(base, r.per_task_finish.back());
        b.anchor = base;
        prev_end = r.end;
        if (open.empty()) {
            done.push_back(r.user_id);
        } else if (r.end != old_end) {
            arm_completion(b, r.end);
            if (r.end > old_end) {
                shifted.push_back(r.user_id);
            }
        }
    }
    for (UserId user : done) {
        auto& b = batch(user);
        auto* r = active_in(v, user);
        r->active = false;
        b.active_vm.reset();
        if (b.completion_entry) {
            kernel_.cancel(*b.completion_entry);
            b.completion_entry.reset();
        }
        finish(b, true);
    }
    std::sort(shifted.begin(), shifted.end());
    return shifted;
}

void World::cut(Batch& b, VmDescriptor& v, double t) {
    auto* r = active_in(v, b.request.user_id);
    if (r == nullptr) {
        return;
    }
    advance(b, *r, t);
    if (b.completion_entry) {
        kernel_.cancel(*b.completion_entry);
        b.completion_entry.reset();
    }
    b.active_vm.reset();
    b.last_vm = v.vm_id;
    trace("release", {{"user", b.request.user_id}, {"vm", to_string(v.vm_id)}, {"at", t}});
    if (r->start >= t) {
        v.reservations.erase(v.reservations.begin() + (r - v.reservations.data()));
        return;
    }
    std::vector<int> ids;
    std::vector<double> finishes;
    for (std::size_t i = 0; i < r->task_ids.size(); ++i) {
        const auto& p = b.progress[static_cast<std::size_t>(r->task_ids[i])];
        if (p.finished_at && *p.finished_at <= t) {
            ids.push_back(r->task_ids[i]);
            finishes.push_back(r->per_task_finish[i]);
        }
    }
    r->task_ids = std::move(ids);
    r->per_task_finish = std::move(finishes);
    r->end = std::min(r->end, t);
    r->active = false;
}

void World::arm_completion(Batch& b, double at) {
    if (b.completion_entry) {
        kernel_.cancel(*b.completion_entry);
    }
    const UserId user = b.request.user_id;
    b.completion_entry = kernel_.schedule(std::max(at, now()), sim::EntryKind::task_completion,
                                          [this, user] { on_completion(user); });
}

void World::arm_deadline(Batch& b) {
    if (b.deadline_entry) {
        kernel_.cancel(*b.deadline_entry);
        b.deadline_entry.reset();
    }
    if (!finite_deadline(b.request.deadline) || is_terminal(b.request.status)) {
        return;
    }
    const UserId user = b.request.user_id;
    b.deadline_entry = kernel_.schedule(std::max(b.request.deadline, now()), sim::EntryKind::deadline,
                                        [this, user] { on_deadline(user); });
}

void World::on_completion(UserId user) {
    auto& b = batch(user);
    b.completion_entry.reset();
    if (!b.active_vm) {
        return;
    }
    auto& v = vm_mut(*b.active_vm);
    auto* r = active_in(v, user);
    advance(b, *r, now());
    r->active = false;
    b.active_vm.reset();
    finish(b, true);
}

void World::on_deadline(UserId user) {
    auto& b = batch(user);
    b.deadline_entry.reset();
    if (is_terminal(b.request.status)) {
        return;
    }
    std::optional<VmId> touched = b.active_vm;
    if (touched) {
        cut(b, vm_mut(*touched), now());
    }
    finish(b, true);
    if (touched) {
        after_mutation({*touched});
    }
}

void World::finish(Batch& b, bool check_deadline) {
    bool ok = all_finished(b.progress);
    if (ok && check_deadline) {
        ok = std::all_of(b.progress.begin(), b.progress.end(), [&](const TaskProgress& p) {
            return *p.finished_at <= b.request.deadline;
        });
    }
    b.request.status = ok ? BatchStatus::completed : BatchStatus::failed;
    if (b.deadline_entry) {
        kernel_.cancel(*b.deadline_entry);
        b.deadline_entry.reset();
    }
    if (b.completion_entry) {
        kernel_.cancel(*b.completion_entry);
        b.completion_entry.reset();
    }
    trace("terminal", {{"user", b.request.user_id}, {"status", to_string(b.request.status)}});
    if (observer_ != nullptr) {
        observer_->batch_terminal(b.request.user_id);
    }
}

const Reservation* World::move(UserId user, VmId id, double start) {
    auto& b = batch(user);
    if (is_terminal(b.request.status)) {
        throw std::logic_error("move: batch " + std::to_string(user) + " is already terminal");
    }
    const std::optional<VmId> old = b.active_vm;
    if (old) {
        cut(b, vm_mut(*old), now());
        if (all_finished(b.progress)) {
            finish(b, true);
            after_mutation({*old});
            return nullptr;
        }
    }
    auto& v = vm_mut(id);
    const auto rem = remaining_request(user);
    const auto& r = reserve(v, rem, start);
    b.anchor = start;
    b.active_vm = id;
    b.last_vm = id;
    b.request.status = BatchStatus::scheduled;
    arm_completion(b, r.end);
    trace("commit", {{"user", user}, {"vm", to_string(id)}, {"start", r.start}, {"end", r.end},
                     {"deadline", b.request.deadline}});
    const double end = r.end;
    if (old && *old != id) {
        after_mutation({*old, id});
    } else {
        after_mutation({id});
    }
    // after_mutation may not touch the ledger, so the reference is still valid,
    // but look it up again to be safe against observers that do.
    const auto* committed = active_in(vm(id), user);
    if (committed == nullptr || committed->end != end) {
        throw std::logic_error("move: committed reservation changed during notification");
    }
    return committed;
}

void World::release(UserId user) {
    auto& b = batch(user);
    if (!b.active_vm) {
        return;
    }
    const VmId id = *b.active_vm;
    cut(b, vm_mut(id), now());
    if (all_finished(b.progress)) {
        finish(b, true);
    } else {
        b.request.status = BatchStatus::pending;
    }
    after_mutation({id});
}

void World::fail(UserId user) {
    auto& b = batch(user);
    if (is_terminal(b.request.status)) {
        return;
    }
    std::optional<VmId> touched = b.active_vm;
    if (touched) {
        cut(b, vm_mut(*touched), now());
    }
    b.request.status = BatchStatus::failed;
    finish(b, true);
    if (touched) {
        after_mutation({*touched});
    }
}

MutationResult World::inflate_tasks(UserId user, const TaskFactors& f) {
    auto& b = batch(user);
    MutationResult result;
    if (is_terminal(b.request.status)) {
        result.vacuous = true;
        return result;
    }
    result.affected.push_back(user);
    auto scale = [&] {
        for (std::size_t i = 0; i < b.request.tasks.size(); ++i) {
            if (b.progress[i].finished_at) {
                continue;
            }
            auto& t = b.request.tasks[i];
            t.workload *= f.workload;
            t.ram *= f.ram;
            t.storage *= f.storage;
            t.bandwidth *= f.bandwidth;
        }
    };
    if (!b.active_vm) {
        scale();
        return result;
    }
    const VmId id = *b.active_vm;
    auto& v = vm_mut(id);
    result.shifted = rebuild(v, now(), scale);
    std::erase(result.shifted, user);
    if (!is_terminal(b.request.status) && b.active_vm &&
        !capacity_fits(v.capacity(), remaining_request(user).tasks)) {
        cut(b, v, now());
        b.request.status = BatchStatus::pending;
        result.suspended.push_back(user);
    }
    after_mutation({id});
    return result;
}

MutationResult World::cut_deadline(UserId user, double delta) {
    auto& b = batch(user);
    MutationResult result;
    if (is_terminal(b.request.status)) {
        result.vacuous = true;
        return result;
    }
    result.affected.push_back(user);
    b.request.deadline = std::max(now(), b.request.deadline - delta);
    arm_deadline(b);
    return result;
}

MutationResult World::degrade_vm(VmId id, const VmFactors& f) {
    auto& v = vm_mut(id);
    MutationResult result;
    result.affected = users_on(id);
    result.shifted = rebuild(v, now(), [&] {
        v.cpu *= f.cpu;
        v.ram *= f.ram;
        v.storage *= f.storage;
        v.bandwidth *= f.bandwidth;
    });
    for (UserId user : result.affected) {
        auto& b = batch(user);
        if (b.active_vm != id) {
            continue;
        }
        if (!capacity_fits(v.capacity(), remaining_request(user).tasks)) {
            cut(b, v, now());
            b.request.status = BatchStatus::pending;
            result.suspended.push_back(user);
        }
    }
    after_mutation({id});
    return result;
}

void World::verify_ledger() const {
    for (const auto& host : datacenter_.hosts) {
        for (const auto& v : host.vms) {
            check_non_overlap(v);
        }
    }
}

void World::after_mutation(std::initializer_list<VmId> touched) {
    for (VmId id : touched) {
        if (verify_) {
            check_non_overlap(vm(id));
        }
        if (observer_ != nullptr) {
            observer_->vm_changed(id);
        }
    }
}

void World::trace(std::string_view kind, const nlohmann::json& detail) {
    if (trace_ != nullptr && trace_->enabled()) {
        trace_->emit(now(), "world", kind, detail);
    }
}

}  // namespace agentsched::cloud
