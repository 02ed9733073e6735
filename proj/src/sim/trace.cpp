#include "agentsched/sim/trace.hpp"

#include <ostream>

namespace agentsched::sim {

void TraceLog::emit(double t, std::string_view agent, std::string_view kind,
                    const nlohmann::json& detail) {
    if (out_ == nullptr) {
        return;
    }
    nlohmann::json record;
    record["t"] = t;
    record["agent"] = agent;
    record["kind"] = kind;
    record["detail"] = detail;
    (*out_) << record.dump() << '\n';
    ++records_;
}

}  // namespace agentsched::sim
