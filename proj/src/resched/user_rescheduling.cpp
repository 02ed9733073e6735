#include "agentsched/resched/user_rescheduling.hpp"

namespace agentsched::resched {

std::string_view to_string(Step step) noexcept {
    switch (step) {
    case Step::i1: return "i1";
    case Step::i2: return "i2";
    case Step::i3: return "i3";
    }
    return "?";
}

std::optional<Step> step_from_name(std::string_view name) noexcept {
    if (name == "i1") {
        return Step::i1;
    }
    if (name == "i2") {
        return Step::i2;
    }
    if (name == "i3") {
        return Step::i3;
    }
    return std::nullopt;
}

}  // namespace agentsched::resched
