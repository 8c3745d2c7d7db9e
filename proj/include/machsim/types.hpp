#pragma once
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "machsim/geom.hpp"

namespace machsim {

// Loads and capacities are TFLOPS throughout; distances are meters, time in seconds.

struct VehicleState {
    std::string id;
    Vec2 position;
    double speed = 0.0;        // m/s, >= 0
    Vec2 direction{1.0, 0.0};  // unit when speed > 0
    double onboard_capacity = 0.0;
    double generated_load = 0.0;  // total compute demand of the vehicle's task
};

struct RsuSpec {
    std::string id;
    Vec2 position;
    double coverage_radius = 0.0;
    double capacity = 0.0;
    bool enabled = true;
};

struct LoadKnowledge {
    double known_load = 0.0;
    int known_at = -1;  // step of the report; -1 = never heard from
};

struct RsuRuntime {
    RsuSpec spec;
    std::set<std::string> connected;  // vehicle ids, ordered for determinism
    double assigned_load = 0.0;       // sum of connected vehicles' offloaded loads
    std::map<std::string, LoadKnowledge> peer_knowledge;
};

struct LoadShareInterval {
    bool oracle = false;
    int steps = 1;  // ignored when oracle

    static LoadShareInterval every(int k) { return {false, k}; }
    static LoadShareInterval perfect() { return {true, 0}; }
    bool operator==(const LoadShareInterval&) const = default;
};

struct StrategyParams {
    double leaving_threshold = 0.0;   // early-exit margin: act when predicted
                                      // position leaves (1-t) * radius
    double overload_threshold = 0.7;  // utilization above which handovers are forced
    double hysteresis = 0.05;         // min utilization gap for balancing moves
    double min_suitability = 0.3;     // floor for voluntary handover targets
    LoadShareInterval load_share;
};

struct TaskLoadModel {
    double per_frame_gflop = 79.72;
    double frame_rate = 30.0;
    double onboard_capacity = 1.3;  // TFLOPS available in the vehicle
    double local_fraction = 0.7;    // share of onboard capacity used locally
    bool dynamic = false;
    double dynamic_low = 1.9;
    double dynamic_high = 3.0;
    bool resample_per_step = false;  // default: one demand draw per vehicle lifetime
    std::uint64_t seed = 0;
};

struct FailureEvent {
    std::string rsu_id;
    int disable_at = 0;
    std::optional<int> enable_at;  // re-enable step, if any
};

enum class RoadKind { straight_road, ring_road };

struct SyntheticScenarioSpec {
    RoadKind kind = RoadKind::ring_road;
    double road_length = 300.0;  // straight_road: vehicles travel x in [0, length)
    double ring_radius = 80.0;   // ring_road: circle around the origin
    int vehicle_count = 10;
    int spawn_interval = 1;  // steps between consecutive spawns
    int dwell_steps = 100;   // ring_road lifetime; straight_road ends at the road end
    double speed_min = 10.0;
    double speed_max = 10.0;
};

struct MobilitySource {
    // exactly one of these is used
    std::optional<SyntheticScenarioSpec> synthetic;
    std::optional<std::string> trace_path;
};

enum class StrategyKind { mach, nearest, earliest, latest };

struct SimConfig {
    std::string name = "scenario";
    std::uint64_t seed = 1;
    double step_duration = 1.0;
    int duration = 100;  // number of steps
    double qos_alpha = 0.0231;
    int cam_interval = 1;
    double capacity_scale = 1.0;  // multiplies every RSU capacity
    StrategyKind strategy = StrategyKind::mach;
    StrategyParams params;
    TaskLoadModel load;
    std::vector<RsuSpec> rsus;
    std::vector<FailureEvent> failures;
    MobilitySource mobility;
};

enum class Trigger { RANGE, LOAD_BALANCING, OVERLOAD };
enum class Outcome { SUCCESS, FAILED };

struct HandoverRequest {
    std::string vehicle_id;
    std::string source_rsu;
    std::string target_rsu;
    Trigger trigger = Trigger::RANGE;
    double offloaded_load = 0.0;
    int issued_at = 0;
};

struct HandoverEvent {
    int step = 0;
    std::string vehicle_id;
    std::string source_rsu;
    std::string target_rsu;
    Trigger trigger = Trigger::RANGE;
    Outcome outcome = Outcome::SUCCESS;
};

const char* to_string(Trigger t);
const char* to_string(Outcome o);
const char* to_string(StrategyKind s);
StrategyKind parse_strategy(const std::string& name);  // throws ConfigError on unknown name

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class TraceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class SimError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throws ConfigError naming the first violated field, e.g. "rsus[2].capacity: must be > 0".
void validate_config(const SimConfig& cfg);

}  // namespace machsim
