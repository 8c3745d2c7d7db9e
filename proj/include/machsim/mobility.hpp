#pragma once
#include <iosfwd>
#include <vector>

#include "machsim/types.hpp"

namespace machsim {

struct TraceRecord {
    double time = 0.0;
    std::string vehicle_id;
    Vec2 position;
};

// Per-step vehicle lists on the simulation grid. Vehicles absent at a step are
// despawned at that step; entries within a step are sorted by vehicle id.
struct Schedule {
    std::vector<std::vector<VehicleState>> steps;
    int num_steps() const { return static_cast<int>(steps.size()); }
};

// Reads "time,vehicle_id,x,y" CSV and resamples each vehicle onto the step grid
// by linear interpolation. Rows need not be globally sorted, but each vehicle's
// rows must be strictly time-increasing. Throws TraceError with the offending
// line number on malformed input. An empty trace yields an empty schedule.
Schedule ingest_trace(std::istream& in, double step_duration);

// Straight roads spawn at x=0 and despawn when x reaches the road end; rings
// circulate around the origin at angular speed v/r for dwell_steps. Spawn angle
// and per-vehicle speed are drawn deterministically from the seed.
Schedule generate_synthetic(const SyntheticScenarioSpec& spec, std::uint64_t seed,
                            double step_duration, int num_steps);

// Dead-reckoned position horizon steps ahead.
inline Vec2 predict_position(const VehicleState& v, int horizon, double step_duration) {
    return v.position + v.direction * (v.speed * horizon * step_duration);
}

// Writes a schedule back out as a trace CSV; grid positions survive a
// write/ingest round trip exactly.
void write_trace_csv(std::ostream& out, const Schedule& sched, double step_duration);

}  // namespace machsim
