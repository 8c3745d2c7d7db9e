#include "machsim/scenario.hpp"

#include <filesystem>
#include <fstream>

#include "machsim/toml_lite.hpp"

namespace fs = std::filesystem;

namespace machsim {

namespace {

using toml_lite::Table;
using toml_lite::Value;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw ConfigError(path + ": " + why);
}

const Value* find(const Table& t, const std::string& key) {
    auto it = t.find(key);
    return it == t.end() ? nullptr : &it->second;
}

double get_num(const Table& t, const std::string& key, const std::string& at) {
    const Value* v = find(t, key);
    if (!v) fail(at + "." + key, "missing");
    if (!v->is_num()) fail(at + "." + key, "expected a number");
    return std::get<double>(v->v);
}

double get_num_or(const Table& t, const std::string& key, const std::string& at, double dflt) {
    return find(t, key) ? get_num(t, key, at) : dflt;
}

long long get_int(const Table& t, const std::string& key, const std::string& at) {
    const Value* v = find(t, key);
    if (!v) fail(at + "." + key, "missing");
    if (!v->is_num() || !v->is_int) fail(at + "." + key, "expected an integer");
    return v->int_value;
}

long long get_int_or(const Table& t, const std::string& key, const std::string& at,
                     long long dflt) {
    return find(t, key) ? get_int(t, key, at) : dflt;
}

std::string get_str(const Table& t, const std::string& key, const std::string& at) {
    const Value* v = find(t, key);
    if (!v) fail(at + "." + key, "missing");
    if (!v->is_str()) fail(at + "." + key, "expected a string");
    return std::get<std::string>(v->v);
}

bool get_bool_or(const Table& t, const std::string& key, const std::string& at, bool dflt) {
    const Value* v = find(t, key);
    if (!v) return dflt;
    if (!v->is_bool()) fail(at + "." + key, "expected true or false");
    return std::get<bool>(v->v);
}

SimConfig from_table(const Table& root, const std::string& name_hint,
                     const fs::path& base_dir) {
    SimConfig cfg;
    cfg.name = find(root, "name") ? get_str(root, "name", "") : name_hint;
    cfg.seed = static_cast<std::uint64_t>(get_int_or(root, "seed", "", 1));
    cfg.step_duration = get_num_or(root, "step_duration", "", 1.0);
    cfg.duration = static_cast<int>(get_int_or(root, "duration", "", 100));
    cfg.qos_alpha = get_num_or(root, "qos_alpha", "", 0.0231);
    cfg.cam_interval = static_cast<int>(get_int_or(root, "cam_interval", "", 1));
    cfg.capacity_scale = get_num_or(root, "capacity_scale", "", 1.0);

    if (const Value* v = find(root, "strategy")) {
        if (!v->is_table()) fail("strategy", "expected a [strategy] section");
        const Table& t = std::get<Table>(v->v);
        cfg.strategy = parse_strategy(get_str(t, "name", "strategy"));
        cfg.params.leaving_threshold = get_num_or(t, "leaving_threshold", "strategy", 0.0);
        cfg.params.overload_threshold = get_num_or(t, "overload_threshold", "strategy", 0.7);
        cfg.params.hysteresis = get_num_or(t, "hysteresis", "strategy", 0.05);
        cfg.params.min_suitability = get_num_or(t, "min_suitability", "strategy", 0.3);
        if (const Value* iv = find(t, "load_share_interval")) {
            if (iv->is_str()) {
                std::string s = std::get<std::string>(iv->v);
                if (s != "oracle")
                    fail("strategy.load_share_interval", "expected an integer or \"oracle\"");
                cfg.params.load_share = LoadShareInterval::perfect();
            } else if (iv->is_num() && iv->is_int) {
                cfg.params.load_share = LoadShareInterval::every(static_cast<int>(iv->int_value));
            } else {
                fail("strategy.load_share_interval", "expected an integer or \"oracle\"");
            }
        }
    }

    if (const Value* v = find(root, "load")) {
        if (!v->is_table()) fail("load", "expected a [load] section");
        const Table& t = std::get<Table>(v->v);
        cfg.load.per_frame_gflop = get_num_or(t, "per_frame_gflop", "load", 79.72);
        cfg.load.frame_rate = get_num_or(t, "frame_rate", "load", 30.0);
        cfg.load.onboard_capacity = get_num_or(t, "onboard_capacity", "load", 1.3);
        cfg.load.local_fraction = get_num_or(t, "local_fraction", "load", 0.7);
        cfg.load.dynamic = get_bool_or(t, "dynamic", "load", false);
        cfg.load.dynamic_low = get_num_or(t, "dynamic_low", "load", 1.9);
        cfg.load.dynamic_high = get_num_or(t, "dynamic_high", "load", 3.0);
        cfg.load.resample_per_step = get_bool_or(t, "resample_per_step", "load", false);
    }
    cfg.load.seed = cfg.seed;

    if (const Value* v = find(root, "mobility")) {
        if (!v->is_table()) fail("mobility", "expected a [mobility] section");
        const Table& t = std::get<Table>(v->v);
        std::string source = get_str(t, "source", "mobility");
        if (source == "trace") {
            fs::path p = get_str(t, "trace_path", "mobility");
            if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
            cfg.mobility.trace_path = p.string();
        } else if (source == "synthetic") {
            SyntheticScenarioSpec s;
            std::string kind = get_str(t, "kind", "mobility");
            if (kind == "straight_road")
                s.kind = RoadKind::straight_road;
            else if (kind == "ring_road")
                s.kind = RoadKind::ring_road;
            else
                fail("mobility.kind", "expected straight_road|ring_road");
            s.road_length = get_num_or(t, "road_length", "mobility", s.road_length);
            s.ring_radius = get_num_or(t, "ring_radius", "mobility", s.ring_radius);
            s.vehicle_count =
                static_cast<int>(get_int_or(t, "vehicle_count", "mobility", s.vehicle_count));
            s.spawn_interval =
                static_cast<int>(get_int_or(t, "spawn_interval", "mobility", s.spawn_interval));
            s.dwell_steps =
                static_cast<int>(get_int_or(t, "dwell_steps", "mobility", s.dwell_steps));
            s.speed_min = get_num_or(t, "speed_min", "mobility", s.speed_min);
            s.speed_max = get_num_or(t, "speed_max", "mobility", s.speed_max);
            cfg.mobility.synthetic = s;
        } else {
            fail("mobility.source", "expected synthetic|trace");
        }
    }

    if (const Value* v = find(root, "rsu")) {
        if (!v->is_table_array()) fail("rsu", "expected [[rsu]] sections");
        size_t i = 0;
        for (const Table& t : std::get<std::vector<Table>>(v->v)) {
            std::string at = "rsu[" + std::to_string(i++) + "]";
            RsuSpec r;
            r.id = get_str(t, "id", at);
            r.position = {get_num(t, "x", at), get_num(t, "y", at)};
            r.coverage_radius = get_num(t, "radius", at);
            r.capacity = get_num(t, "capacity", at);
            r.enabled = get_bool_or(t, "enabled", at, true);
            cfg.rsus.push_back(std::move(r));
        }
    }

    if (const Value* v = find(root, "failure")) {
        if (!v->is_table_array()) fail("failure", "expected [[failure]] sections");
        size_t i = 0;
        for (const Table& t : std::get<std::vector<Table>>(v->v)) {
            std::string at = "failure[" + std::to_string(i++) + "]";
            FailureEvent f;
            f.rsu_id = get_str(t, "rsu", at);
            f.disable_at = static_cast<int>(get_int(t, "disable_at", at));
            if (find(t, "enable_at"))
                f.enable_at = static_cast<int>(get_int(t, "enable_at", at));
            cfg.failures.push_back(std::move(f));
        }
    }
    return cfg;
}

}  // namespace

SimConfig load_scenario(const std::string& path) {
    Table root = toml_lite::parse_file(path);
    fs::path p(path);
    try {
        return from_table(root, p.stem().string(), p.parent_path());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

SimConfig parse_scenario(const std::string& text, const std::string& name_hint) {
    return from_table(toml_lite::parse(text), name_hint, {});
}

namespace {
SweepGrid grid_from_table(const Table& root, const StrategyParams& base) {
    SweepGrid g;
    g.overload = {base.overload_threshold};
    g.hysteresis = {base.hysteresis};
    g.min_suitability = {base.min_suitability};
    g.leaving = {base.leaving_threshold};

    const Value* v = find(root, "grid");
    if (!v) return g;
    if (!v->is_table()) fail("grid", "expected a [grid] section");
    const Table& t = std::get<Table>(v->v);
    auto list = [&](const char* key, std::vector<double>& out) {
        const Value* lv = find(t, key);
        if (!lv) return;
        if (!lv->is_array()) fail(std::string("grid.") + key, "expected a list of numbers");
        std::vector<double> vals;
        for (const Value& item : std::get<std::vector<Value>>(lv->v)) {
            if (!item.is_num()) fail(std::string("grid.") + key, "expected a list of numbers");
            vals.push_back(std::get<double>(item.v));
        }
        if (vals.empty()) fail(std::string("grid.") + key, "list must not be empty");
        out = vals;
    };
    list("overload", g.overload);
    list("hysteresis", g.hysteresis);
    list("min_suitability", g.min_suitability);
    list("leaving", g.leaving);
    return g;
}
}  // namespace

SweepGrid load_grid(const std::string& path, const StrategyParams& base) {
    try {
        return grid_from_table(toml_lite::parse_file(path), base);
    } catch (const ConfigError& e) {
        std::string what = e.what();
        if (what.find(path) == std::string::npos) throw ConfigError(path + ": " + what);
        throw;
    }
}

SweepGrid parse_grid(const std::string& text, const StrategyParams& base) {
    return grid_from_table(toml_lite::parse(text), base);
}

std::string result_basename(const SimConfig& cfg) {
    std::string interval = cfg.params.load_share.oracle
                               ? "oracle"
                               : std::to_string(cfg.params.load_share.steps);
    return cfg.name + "_" + to_string(cfg.strategy) + "_" + interval;
}

std::string write_run_outputs(const std::string& out_dir, const SimConfig& cfg,
                              const RunResult& result) {
    fs::create_directories(out_dir);
    fs::path base = fs::path(out_dir) / result_basename(cfg);

    auto open = [](const fs::path& p) {
        std::ofstream out(p);
        if (!out) throw SimError("cannot write " + p.string());
        return out;
    };
    {
        auto out = open(base.string() + ".csv");
        write_metrics_csv(out, result.metrics);
    }
    {
        auto out = open(base.string() + ".json");
        write_metrics_json(out, result.metrics);
    }
    {
        auto out = open(base.string() + "_events.csv");
        write_events_csv(out, result.events);
    }
    return base.string();
}

}  // namespace machsim
