#include <cmath>
#include <set>

#include "machsim/types.hpp"

namespace machsim {

const char* to_string(Trigger t) {
    switch (t) {
        case Trigger::RANGE: return "range";
        case Trigger::LOAD_BALANCING: return "load_balancing";
        case Trigger::OVERLOAD: return "overload";
    }
    return "?";
}

const char* to_string(Outcome o) {
    return o == Outcome::SUCCESS ? "success" : "failed";
}

const char* to_string(StrategyKind s) {
    switch (s) {
        case StrategyKind::mach: return "mach";
        case StrategyKind::nearest: return "nearest";
        case StrategyKind::earliest: return "earliest";
        case StrategyKind::latest: return "latest";
    }
    return "?";
}

StrategyKind parse_strategy(const std::string& name) {
    if (name == "mach") return StrategyKind::mach;
    if (name == "nearest") return StrategyKind::nearest;
    if (name == "earliest") return StrategyKind::earliest;
    if (name == "latest") return StrategyKind::latest;
    throw ConfigError("strategy: unknown name '" + name +
                      "' (expected mach|nearest|earliest|latest)");
}

namespace {
[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw ConfigError(path + ": " + why);
}

void need(bool ok, const std::string& path, const std::string& why) {
    if (!ok) fail(path, why);
}

void need_finite(double v, const std::string& path) {
    if (!std::isfinite(v)) fail(path, "must be finite");
}
}  // namespace

void validate_config(const SimConfig& cfg) {
    need(cfg.step_duration > 0.0, "step_duration", "must be > 0");
    need_finite(cfg.step_duration, "step_duration");
    need(cfg.duration >= 1, "duration", "must be >= 1");
    need(cfg.qos_alpha > 0.0, "qos_alpha", "must be > 0");
    need(cfg.cam_interval >= 1, "cam_interval", "must be >= 1");
    need(cfg.capacity_scale > 0.0, "capacity_scale", "must be > 0");

    const StrategyParams& p = cfg.params;
    need(p.leaving_threshold >= 0.0 && p.leaving_threshold <= 1.0, "strategy.leaving_threshold",
         "must be in [0,1]");
    need(p.overload_threshold > 0.0 && p.overload_threshold <= 1.0, "strategy.overload_threshold",
         "must be in (0,1]");
    need(p.hysteresis >= 0.0 && p.hysteresis <= 1.0, "strategy.hysteresis", "must be in [0,1]");
    need(p.min_suitability >= 0.0 && p.min_suitability <= 1.0, "strategy.min_suitability",
         "must be in [0,1]");
    if (!p.load_share.oracle)
        need(p.load_share.steps >= 1, "strategy.load_share_interval", "must be >= 1 or 'oracle'");

    const TaskLoadModel& m = cfg.load;
    need(m.per_frame_gflop >= 0.0, "load.per_frame_gflop", "must be >= 0");
    need(m.frame_rate > 0.0, "load.frame_rate", "must be > 0");
    need(m.onboard_capacity > 0.0, "load.onboard_capacity", "must be > 0");
    need(m.local_fraction >= 0.0 && m.local_fraction <= 1.0, "load.local_fraction",
         "must be in [0,1]");
    if (m.dynamic) {
        need(m.dynamic_low >= 0.0, "load.dynamic_low", "must be >= 0");
        need(m.dynamic_high >= m.dynamic_low, "load.dynamic_high", "must be >= dynamic_low");
    }

    need(!cfg.rsus.empty(), "rsus", "at least one RSU is required");
    std::set<std::string> ids;
    bool any_enabled = false;
    for (size_t i = 0; i < cfg.rsus.size(); ++i) {
        const RsuSpec& r = cfg.rsus[i];
        std::string at = "rsus[" + std::to_string(i) + "]";
        need(!r.id.empty(), at + ".id", "must not be empty");
        need(ids.insert(r.id).second, at + ".id", "duplicate rsu_id '" + r.id + "'");
        need(r.coverage_radius > 0.0, at + ".coverage_radius", "must be > 0");
        need(r.capacity > 0.0, at + ".capacity", "must be > 0");
        need_finite(r.position.x, at + ".x");
        need_finite(r.position.y, at + ".y");
        any_enabled = any_enabled || r.enabled;
    }
    need(any_enabled, "rsus", "at least one RSU must start enabled");

    for (size_t i = 0; i < cfg.failures.size(); ++i) {
        const FailureEvent& f = cfg.failures[i];
        std::string at = "failures[" + std::to_string(i) + "]";
        need(ids.count(f.rsu_id) > 0, at + ".rsu", "unknown rsu_id '" + f.rsu_id + "'");
        need(f.disable_at >= 0 && f.disable_at < cfg.duration, at + ".disable_at",
             "must lie within the run");
        if (f.enable_at)
            need(*f.enable_at > f.disable_at, at + ".enable_at", "must be after disable_at");
    }

    bool has_synth = cfg.mobility.synthetic.has_value();
    bool has_trace = cfg.mobility.trace_path.has_value();
    need(has_synth != has_trace, "mobility", "exactly one of synthetic|trace must be set");
    if (has_synth) {
        const SyntheticScenarioSpec& s = *cfg.mobility.synthetic;
        need(s.vehicle_count >= 1, "mobility.vehicle_count", "must be >= 1");
        need(s.spawn_interval >= 0, "mobility.spawn_interval", "must be >= 0");
        need(s.speed_min > 0.0, "mobility.speed_min", "must be > 0");
        need(s.speed_max >= s.speed_min, "mobility.speed_max", "must be >= speed_min");
        if (s.kind == RoadKind::straight_road)
            need(s.road_length > 0.0, "mobility.road_length", "must be > 0");
        else {
            need(s.ring_radius > 0.0, "mobility.ring_radius", "must be > 0");
            need(s.dwell_steps >= 1, "mobility.dwell_steps", "must be >= 1");
        }
    }
}

}  // namespace machsim
