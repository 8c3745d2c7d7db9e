#pragma once
#include <memory>
#include <optional>
#include <vector>

#include "machsim/types.hpp"

namespace machsim {

// What a serving RSU knows about one of its vehicles: the last beaconed state,
// the beacon before that (for entry detection), and the offloaded demand.
struct TrackedVehicle {
    VehicleState state;
    Vec2 prev_position;
    double offload = 0.0;
};

// A peer station as seen through shared knowledge: true geometry and capacity,
// possibly stale load. Stations never heard from count as idle (known_at -1);
// the admission check on the target guards against the optimism.
struct CandidateView {
    std::string id;
    Vec2 position;
    double radius = 0.0;
    double capacity = 0.0;
    double known_load = 0.0;
    int known_at = -1;
};

// Everything one RSU sees when making handover decisions for a step.
struct RsuStepView {
    const RsuSpec* self = nullptr;
    double assigned_load = 0.0;
    std::vector<TrackedVehicle> vehicles;  // connected, vehicle-id order
    std::vector<CandidateView> peers;      // enabled peers, id order
    StrategyParams params;
    double alpha = 0.0231;
    double step_duration = 1.0;
    int step = 0;
};

// Handover attractiveness of a candidate for a vehicle: the distance score of
// the predicted next position times the load score after adding the vehicle's
// offload to the candidate's known load. Always in (0, 1].
double suitability(const VehicleState& v, double offload, const CandidateView& cand,
                   double alpha, double step_duration);

class Strategy {
  public:
    virtual ~Strategy() = default;

    // Whether a connection requires staying inside the serving coverage. The
    // nearest baseline attaches regardless of range and overrides this.
    virtual bool requires_coverage() const { return true; }

    // Admission target for an unconnected vehicle, if any. Default: nearest
    // enabled RSU whose coverage contains the vehicle (ties: lowest id).
    virtual std::optional<std::string> admit(const VehicleState& v,
                                             const std::vector<RsuRuntime>& rsus) const;

    // Handover requests for one RSU, at most one per vehicle. Pure in the view.
    virtual std::vector<HandoverRequest> decide(const RsuStepView& view) const = 0;
};

std::unique_ptr<Strategy> make_strategy(StrategyKind kind);

// Target-side admission control. Range handovers need the predicted position
// inside the target's coverage; load-driven handovers need the target's true
// utilization to stay within capacity after the transfer. Disabled targets
// always decline.
bool decide_request(const HandoverRequest& req, const RsuRuntime& target, Vec2 predicted);

}  // namespace machsim
