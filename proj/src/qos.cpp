#include "machsim/qos.hpp"

#include <cmath>
#include <limits>

namespace machsim {

double qos_distance(double distance, double radius, double alpha) {
    if (distance <= radius) return 1.0;
    return std::exp(-alpha * (distance - radius));
}

double qos_load(double load, double capacity) {
    if (load <= capacity) return 1.0;
    return capacity / load;
}

double derive_alpha(double distance, double target, double radius) {
    if (distance <= radius) throw SimError("derive_alpha: distance must exceed radius");
    if (target <= 0.0 || target >= 1.0) throw SimError("derive_alpha: target must be in (0,1)");
    return -std::log(target) / (distance - radius);
}

double vehicle_qos(const VehicleState& v, const RsuRuntime* serving,
                   const std::vector<RsuRuntime>& rsus, double alpha) {
    if (serving) {
        const RsuSpec& s = serving->spec;
        return qos_total(dist(v.position, s.position), s.coverage_radius, alpha,
                         serving->assigned_load, s.capacity);
    }
    // Uncovered: distance against the nearest enabled station, load factor 1.
    const RsuRuntime* nearest = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : rsus) {
        if (!r.spec.enabled) continue;
        double d = dist(v.position, r.spec.position);
        if (d < best) {
            best = d;
            nearest = &r;
        }
    }
    if (!nearest) throw SimError("vehicle_qos: no enabled RSU");
    return qos_distance(best, nearest->spec.coverage_radius, alpha);
}

}  // namespace machsim
