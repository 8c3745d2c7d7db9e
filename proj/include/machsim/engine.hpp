#pragma once
#include <functional>
#include <map>

#include "machsim/metrics.hpp"
#include "machsim/mobility.hpp"
#include "machsim/strategy.hpp"
#include "machsim/types.hpp"

namespace machsim {

struct SimulationState {
    int step = 0;                        // next step to execute
    std::vector<RsuRuntime> rsus;        // id order, capacities pre-scaled
    std::vector<VehicleState> vehicles;  // live vehicles, id order, true states
    std::map<std::string, std::string> connections;   // vehicle -> serving RSU
    std::map<std::string, TrackedVehicle> cam_view;   // what serving RSUs know
    std::vector<HandoverEvent> events;
    MetricsSeries metrics;

    RsuRuntime* find_rsu(const std::string& id);
    const RsuRuntime* find_rsu(const std::string& id) const;
};

// Inspection point fired at every request resolution; load_before is the
// target's true assigned load the moment the verdict was made.
struct ResolutionAudit {
    HandoverRequest request;
    bool accepted = false;
    double target_load_before = 0.0;
    double target_capacity = 0.0;
};

struct Hooks {
    std::function<void(const SimulationState&, const ResolutionAudit&)> on_resolution;
    std::function<void(const SimulationState&)> on_step_end;
};

// Demand draw for a vehicle: the static frame-rate product, or a uniform draw
// keyed on (seed, vehicle, epoch) in dynamic mode. Epoch is 0 for
// lifetime-sampled demands and the step index under per-step resampling.
double sampled_demand(const TaskLoadModel& model, const std::string& vehicle_id, int epoch);

// Share of the generated load that exceeds the vehicle's local compute budget.
double offloaded_load(const VehicleState& v, const TaskLoadModel& model);

SimulationState init_state(const SimConfig& cfg);

// One simulation step: mobility and admission, beacons, load sharing, per-RSU
// strategy decisions, request resolution, then metrics. Invariants are checked
// every step and violations throw SimError.
void run_step(SimulationState& st, const Schedule& sched, const SimConfig& cfg,
              const Strategy& strat, const Hooks* hooks = nullptr);

struct RunResult {
    MetricsSeries metrics;
    std::vector<HandoverEvent> events;
};

// Full run from the empty state. Validates the config, materializes the
// mobility source and applies cfg.duration steps.
RunResult run(const SimConfig& cfg, const Hooks* hooks = nullptr);
RunResult run_on_schedule(const SimConfig& cfg, const Schedule& sched,
                          const Hooks* hooks = nullptr);

// Schedule for cfg.mobility: generated for synthetic specs, ingested for traces.
Schedule build_schedule(const SimConfig& cfg);

}  // namespace machsim
