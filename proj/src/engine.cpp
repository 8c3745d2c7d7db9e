#include "machsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "machsim/knowledge.hpp"
#include "machsim/qos.hpp"
#include "machsim/rng.hpp"

namespace machsim {

RsuRuntime* SimulationState::find_rsu(const std::string& id) {
    for (auto& r : rsus)
        if (r.spec.id == id) return &r;
    return nullptr;
}
const RsuRuntime* SimulationState::find_rsu(const std::string& id) const {
    return const_cast<SimulationState*>(this)->find_rsu(id);
}

double sampled_demand(const TaskLoadModel& model, const std::string& vehicle_id, int epoch) {
    if (!model.dynamic) return model.per_frame_gflop * model.frame_rate / 1000.0;
    std::uint64_t bits = mix(mix(model.seed, hash_str(vehicle_id)),
                             static_cast<std::uint64_t>(epoch));
    return model.dynamic_low + u01(bits) * (model.dynamic_high - model.dynamic_low);
}

double offloaded_load(const VehicleState& v, const TaskLoadModel& model) {
    return std::max(0.0, v.generated_load - model.local_fraction * v.onboard_capacity);
}

SimulationState init_state(const SimConfig& cfg) {
    SimulationState st;
    st.rsus.reserve(cfg.rsus.size());
    for (const auto& spec : cfg.rsus) {
        RsuRuntime rt;
        rt.spec = spec;
        rt.spec.capacity *= cfg.capacity_scale;
        st.rsus.push_back(std::move(rt));
    }
    std::sort(st.rsus.begin(), st.rsus.end(),
              [](const RsuRuntime& a, const RsuRuntime& b) { return a.spec.id < b.spec.id; });
    st.metrics.name = cfg.name;
    return st;
}

namespace {

void disconnect(SimulationState& st, const std::string& vid) {
    auto it = st.connections.find(vid);
    if (it == st.connections.end()) return;
    if (RsuRuntime* r = st.find_rsu(it->second)) r->connected.erase(vid);
    st.connections.erase(it);
    st.cam_view.erase(vid);
}

// Canonical load accounting: per-RSU sum of connected offloads in vehicle-id
// order. Called after every phase that moves vehicles so the stored values stay
// exactly reproducible.
void recompute_loads(SimulationState& st, const SimConfig& cfg) {
    std::map<std::string, const VehicleState*> by_id;
    for (const auto& v : st.vehicles) by_id[v.id] = &v;
    for (auto& r : st.rsus) {
        double sum = 0.0;
        for (const auto& vid : r.connected) {
            auto it = by_id.find(vid);
            if (it == by_id.end()) throw SimError("invariant: connected vehicle not alive");
            sum += offloaded_load(*it->second, cfg.load);
        }
        r.assigned_load = sum;
    }
}

void check_invariants(const SimulationState& st) {
    size_t linked = 0;
    for (const auto& r : st.rsus) {
        if (!r.spec.enabled && !r.connected.empty())
            throw SimError("invariant: disabled RSU holds connections");
        for (const auto& vid : r.connected) {
            auto it = st.connections.find(vid);
            if (it == st.connections.end() || it->second != r.spec.id)
                throw SimError("invariant: connection maps out of sync");
            ++linked;
        }
    }
    if (linked != st.connections.size())
        throw SimError("invariant: connection maps out of sync");
}

}  // namespace

void run_step(SimulationState& st, const Schedule& sched, const SimConfig& cfg,
              const Strategy& strat, const Hooks* hooks) {
    const int s = st.step;
    const double dt = cfg.step_duration;

    // -- mobility: advance, despawn, spawn ---------------------------------
    const std::vector<VehicleState> empty;
    const std::vector<VehicleState>& now =
        s < sched.num_steps() ? sched.steps[s] : empty;

    std::map<std::string, const VehicleState*> present;
    for (const auto& v : now) present[v.id] = &v;

    for (const auto& v : st.vehicles)
        if (!present.count(v.id)) disconnect(st, v.id);  // despawn releases the slot silently

    std::map<std::string, VehicleState> prev_live;
    for (auto& v : st.vehicles) prev_live[v.id] = std::move(v);
    st.vehicles.clear();
    for (const auto& v : now) {
        VehicleState nv = v;  // id/position/speed/direction from the schedule
        auto it = prev_live.find(v.id);
        if (it != prev_live.end() && !cfg.load.resample_per_step) {
            nv.onboard_capacity = it->second.onboard_capacity;
            nv.generated_load = it->second.generated_load;
        } else {
            nv.onboard_capacity = cfg.load.onboard_capacity;
            nv.generated_load =
                sampled_demand(cfg.load, v.id, cfg.load.resample_per_step ? s : 0);
        }
        st.vehicles.push_back(std::move(nv));
    }

    // -- scheduled failures ------------------------------------------------
    for (const auto& f : cfg.failures) {
        RsuRuntime* r = st.find_rsu(f.rsu_id);
        if (!r) continue;  // validated earlier
        if (f.disable_at == s) {
            r->spec.enabled = false;
            auto doomed = r->connected;  // copy: disconnect edits the set
            for (const auto& vid : doomed) disconnect(st, vid);
        }
        if (f.enable_at && *f.enable_at == s) r->spec.enabled = true;
    }

    // -- coverage loss drops the link (nearest keeps out-of-range vehicles) --
    if (strat.requires_coverage()) {
        std::vector<std::string> dropped;
        for (const auto& v : st.vehicles) {
            auto it = st.connections.find(v.id);
            if (it == st.connections.end()) continue;
            const RsuRuntime* r = st.find_rsu(it->second);
            if (dist(v.position, r->spec.position) > r->spec.coverage_radius)
                dropped.push_back(v.id);
        }
        for (const auto& vid : dropped) disconnect(st, vid);
    }

    // -- admission of unconnected vehicles ---------------------------------
    for (const auto& v : st.vehicles) {
        if (st.connections.count(v.id)) continue;
        auto target = strat.admit(v, st.rsus);
        if (!target) continue;
        st.connections[v.id] = *target;
        st.find_rsu(*target)->connected.insert(v.id);
        st.cam_view[v.id] = {v, v.position, offloaded_load(v, cfg.load)};
    }
    recompute_loads(st, cfg);

    // -- beacons refresh the serving RSU's view ----------------------------
    auto cams = emit_cams(s, cfg.cam_interval, st.vehicles, st.connections);
    for (const auto& msg : cams) {
        TrackedVehicle& tv = st.cam_view[msg.state.id];
        tv.prev_position = tv.state.position;
        tv.state = msg.state;
        tv.offload = offloaded_load(msg.state, cfg.load);
    }
    st.metrics.messages.cam += static_cast<long>(cams.size());

    // -- inter-RSU load knowledge ------------------------------------------
    st.metrics.messages.load_share += share_loads(s, st.rsus, cfg.params.load_share);

    // -- strategy decisions, one RSU at a time in id order ------------------
    std::vector<HandoverRequest> requests;
    for (const auto& r : st.rsus) {
        if (!r.spec.enabled) continue;
        RsuStepView view;
        view.self = &r.spec;
        view.assigned_load = r.assigned_load;
        view.params = cfg.params;
        view.alpha = cfg.qos_alpha;
        view.step_duration = dt;
        view.step = s;
        for (const auto& vid : r.connected) view.vehicles.push_back(st.cam_view.at(vid));
        for (const auto& peer : st.rsus) {
            if (peer.spec.id == r.spec.id || !peer.spec.enabled) continue;
            CandidateView c;
            c.id = peer.spec.id;
            c.position = peer.spec.position;
            c.radius = peer.spec.coverage_radius;
            c.capacity = peer.spec.capacity;
            auto it = r.peer_knowledge.find(peer.spec.id);
            if (it != r.peer_knowledge.end()) {
                c.known_load = it->second.known_load;
                c.known_at = it->second.known_at;
            }
            view.peers.push_back(std::move(c));
        }
        auto reqs = strat.decide(view);
        requests.insert(requests.end(), reqs.begin(), reqs.end());
    }

    // -- resolution in (source, vehicle) order ------------------------------
    std::sort(requests.begin(), requests.end(),
              [](const HandoverRequest& a, const HandoverRequest& b) {
                  return std::tie(a.source_rsu, a.vehicle_id) <
                         std::tie(b.source_rsu, b.vehicle_id);
              });
    std::set<std::string> seen;
    for (const auto& req : requests) {
        if (!seen.insert(req.vehicle_id).second)
            throw SimError("invariant: vehicle in two requests in one step");
        RsuRuntime* target = st.find_rsu(req.target_rsu);
        RsuRuntime* source = st.find_rsu(req.source_rsu);
        if (!target || !source) throw SimError("request names unknown RSU");
        auto cam = st.cam_view.find(req.vehicle_id);
        if (cam == st.cam_view.end()) throw SimError("request for untracked vehicle");
        Vec2 predicted = predict_position(cam->second.state, 1, dt);

        bool ok = decide_request(req, *target, predicted);
        if (hooks && hooks->on_resolution)
            hooks->on_resolution(
                st, {req, ok, target->assigned_load, target->spec.capacity});

        if (ok) {
            const VehicleState* vs = nullptr;
            for (const auto& v : st.vehicles)
                if (v.id == req.vehicle_id) vs = &v;
            if (!vs) throw SimError("request for despawned vehicle");
            double off = offloaded_load(*vs, cfg.load);
            source->connected.erase(req.vehicle_id);
            target->connected.insert(req.vehicle_id);
            st.connections[req.vehicle_id] = req.target_rsu;
            source->assigned_load -= off;
            target->assigned_load += off;  // later verdicts see this transfer
        }
        Outcome outcome = ok ? Outcome::SUCCESS : Outcome::FAILED;
        st.events.push_back(
            {s, req.vehicle_id, req.source_rsu, req.target_rsu, req.trigger, outcome});
        classify_and_count(st.metrics.handovers, req.trigger, outcome);
        st.metrics.messages.handover += ok ? 3 : 2;  // request, reply, transfer on success
    }
    recompute_loads(st, cfg);
    check_invariants(st);

    // -- service quality and per-step record --------------------------------
    std::vector<double> qos;
    qos.reserve(st.vehicles.size());
    for (const auto& v : st.vehicles) {
        auto it = st.connections.find(v.id);
        const RsuRuntime* serving = it == st.connections.end() ? nullptr : st.find_rsu(it->second);
        qos.push_back(vehicle_qos(v, serving, st.rsus, cfg.qos_alpha));
    }
    std::vector<double> loads;
    for (const auto& r : st.rsus)
        if (r.spec.enabled) loads.push_back(r.assigned_load);
    StepRecord rec;
    rec.step = s;
    rec.gini = gini(loads);
    rec.qos = qos_snapshot(std::move(qos));
    st.metrics.rows.push_back(rec);

    ++st.step;
    if (hooks && hooks->on_step_end) hooks->on_step_end(st);
}

Schedule build_schedule(const SimConfig& cfg) {
    if (cfg.mobility.synthetic)
        return generate_synthetic(*cfg.mobility.synthetic, cfg.seed, cfg.step_duration,
                                  cfg.duration);
    if (cfg.mobility.trace_path) {
        std::ifstream in(*cfg.mobility.trace_path);
        if (!in) throw TraceError("cannot open trace file: " + *cfg.mobility.trace_path);
        return ingest_trace(in, cfg.step_duration);
    }
    throw ConfigError("mobility: no source configured");
}

RunResult run_on_schedule(const SimConfig& cfg, const Schedule& sched, const Hooks* hooks) {
    validate_config(cfg);
    auto strat = make_strategy(cfg.strategy);
    SimulationState st = init_state(cfg);
    for (int s = 0; s < cfg.duration; ++s) run_step(st, sched, cfg, *strat, hooks);
    return {std::move(st.metrics), std::move(st.events)};
}

RunResult run(const SimConfig& cfg, const Hooks* hooks) {
    validate_config(cfg);
    return run_on_schedule(cfg, build_schedule(cfg), hooks);
}

}  // namespace machsim
