#include "agentsched/ara/selection.hpp"

#include <stdexcept>

namespace agentsched::ara {

const Proposal& select_best(std::span<const Proposal> proposals) {
    if (proposals.empty()) {
        throw std::invalid_argument("select_best needs at least one proposal");
    }
    const Proposal* best = &proposals.front();
    for (const auto& p : proposals.subspan(1)) {
        if (p.completion < best->completion || (p.completion == best->completion && p.vm < best->vm)) {
            best = &p;
        }
    }
    return *best;
}

}  // namespace agentsched::ara
