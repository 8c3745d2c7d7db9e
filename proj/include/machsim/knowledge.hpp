#pragma once
#include <map>
#include <vector>

#include "machsim/types.hpp"

namespace machsim {

// Beacon from a vehicle to its serving RSU carrying the current kinematic state.
struct CamMessage {
    int step = 0;
    std::string rsu_id;
    VehicleState state;
};

struct LoadReport {
    int step = 0;
    std::string from_rsu;
    double load = 0.0;
};

// One beacon per connected vehicle on every cam_interval-th step (step 0
// included); vehicles without a serving RSU stay silent.
std::vector<CamMessage> emit_cams(int step, int cam_interval,
                                  const std::vector<VehicleState>& vehicles,
                                  const std::map<std::string, std::string>& connections);

// Updates peer_knowledge in place and returns the number of inter-RSU messages.
// Periodic mode broadcasts true loads among enabled RSUs every interval steps:
// n*(n-1) messages for n enabled senders. Oracle mode refreshes every peer entry
// with the true current load each step and sends nothing.
int share_loads(int step, std::vector<RsuRuntime>& rsus, LoadShareInterval interval);

}  // namespace machsim
