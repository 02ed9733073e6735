#pragma once

namespace agentsched::ara {

struct AraParams {
    int theta = 5;                // VMs recommended per round
    double collect_timeout = 1.0;  // s, reply window for each conversation step
    double retry_period = 5.0;     // s, wait before a new round after a failed one
    double lease_timeout = 10.0;   // s, BUSY leases revert to READY after this
};

}  // namespace agentsched::ara
