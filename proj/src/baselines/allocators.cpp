#include "agentsched/baselines/allocators.hpp"

#include <algorithm>
#include <limits>

namespace agentsched::baselines {

std::string_view to_string(Kind kind) noexcept {
    switch (kind) {
    case Kind::mct: return "mct";
    case Kind::met: return "met";
    case Kind::min_min: return "min_min";
    case Kind::round_robin: return "round_robin";
    }
    return "?";
}

std::optional<Kind> kind_from_name(std::string_view name) noexcept {
    for (Kind k : {Kind::mct, Kind::met, Kind::min_min, Kind::round_robin}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

namespace {

double start_on(const VmSlotView& v, double tau) { return std::max(tau, v.tail); }

Assignment commit(const BatchView& b, VmSlotView& v, double tau) {
    const double start = start_on(v, tau);
    const double completion = cloud::completion_from(start, v.cpu, b.tasks);
    v.tail = completion;
    return Assignment{b.user, v.id, start, completion};
}

/// Index of the capacity-feasible VM minimising key(vm); first one wins ties,
/// which is the lowest id because `vms` is sorted.
template <class Key>
std::optional<std::size_t> argmin(const BatchView& b, const std::vector<VmSlotView>& vms, Key key) {
    std::optional<std::size_t> best;
    double best_key = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vms.size(); ++i) {
        if (!cloud::capacity_fits(vms[i].capacity(), b.tasks)) {
            continue;
        }
        const double k = key(vms[i]);
        if (!best || k < best_key) {
            best = i;
            best_key = k;
        }
    }
    return best;
}

}  // namespace

std::vector<Assignment> assign_mct(std::span<const BatchView> batches, std::vector<VmSlotView> vms, double tau) {
    std::vector<Assignment> out;
    out.reserve(batches.size());
    for (const auto& b : batches) {
        const auto i = argmin(b, vms, [&](const VmSlotView& v) {
            return cloud::completion_from(start_on(v, tau), v.cpu, b.tasks);
        });
        out.push_back(i ? commit(b, vms[*i], tau) : Assignment{b.user, std::nullopt, 0.0, 0.0});
    }
    return out;
}

std::vector<Assignment> assign_met(std::span<const BatchView> batches, std::vector<VmSlotView> vms, double tau) {
    std::vector<Assignment> out;
    out.reserve(batches.size());
    for (const auto& b : batches) {
        const double wl = cloud::total_workload(b.tasks);
        const auto i = argmin(b, vms, [&](const VmSlotView& v) { return wl / v.cpu; });
        out.push_back(i ? commit(b, vms[*i], tau) : Assignment{b.user, std::nullopt, 0.0, 0.0});
    }
    return out;
}

std::vector<Assignment> assign_min_min(std::span<const BatchView> batches, std::vector<VmSlotView> vms,
                                       double tau) {
    std::vector<Assignment> out;
    out.reserve(batches.size());
    std::vector<bool> done(batches.size(), false);
    for (std::size_t b = 0; b < batches.size(); ++b) {
        if (!argmin(batches[b], vms, [](const VmSlotView&) { return 0.0; })) {
            out.push_back(Assignment{batches[b].user, std::nullopt, 0.0, 0.0});
            done[b] = true;
        }
    }
    for (;;) {
        std::optional<std::size_t> pick_batch;
        std::size_t pick_vm = 0;
        double pick_completion = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < batches.size(); ++b) {
            if (done[b]) {
                continue;
            }
            const auto i = argmin(batches[b], vms, [&](const VmSlotView& v) {
                return cloud::completion_from(start_on(v, tau), v.cpu, batches[b].tasks);
            });
            const double c = cloud::completion_from(start_on(vms[*i], tau), vms[*i].cpu, batches[b].tasks);
            if (!pick_batch || c < pick_completion) {
                pick_batch = b;
                pick_vm = *i;
                pick_completion = c;
            }
        }
        if (!pick_batch) {
            break;
        }
        done[*pick_batch] = true;
        out.push_back(commit(batches[*pick_batch], vms[pick_vm], tau));
    }
    return out;
}

std::vector<Assignment> RoundRobin::assign(std::span<const BatchView> batches, std::vector<VmSlotView> vms,
                                           double tau) {
    std::vector<Assignment> out;
    out.reserve(batches.size());
    const std::size_t n = vms.size();
    for (const auto& b : batches) {
        std::optional<std::size_t> chosen;
        for (std::size_t step = 0; step < n; ++step) {
            const std::size_t i = (cursor_ + step) % n;
            if (cloud::capacity_fits(vms[i].capacity(), b.tasks)) {
                chosen = i;
                break;
            }
        }
        if (!chosen) {
            out.push_back(Assignment{b.user, std::nullopt, 0.0, 0.0});
            continue;
        }
        cursor_ = (*chosen + 1) % n;
        out.push_back(commit(b, vms[*chosen], tau));
    }
    return out;
}

}  // namespace agentsched::baselines
