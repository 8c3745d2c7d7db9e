#pragma once
#include <vector>

#include "machsim/types.hpp"

namespace machsim {

// Distance score: 1 inside the coverage radius, exponential falloff outside.
double qos_distance(double distance, double radius, double alpha);

// Load score: 1 while demand fits the capacity, capacity/load beyond that.
double qos_load(double load, double capacity);

inline double qos_total(double d, double r, double alpha, double load, double cap) {
    return qos_distance(d, r, alpha) * qos_load(load, cap);
}

// Decay rate that makes the distance score hit `target` at `distance` for the
// given radius, i.e. the inverse of qos_distance in alpha.
double derive_alpha(double distance, double target, double radius);

// Per-vehicle service quality. Connected vehicles score against their serving
// RSU (distance x load). Uncovered vehicles score distance-only against the
// nearest enabled RSU. Throws SimError when no RSU is enabled.
double vehicle_qos(const VehicleState& v, const RsuRuntime* serving,
                   const std::vector<RsuRuntime>& rsus, double alpha);

}  // namespace machsim
