#include "machsim/strategy.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "machsim/mobility.hpp"
#include "machsim/qos.hpp"

namespace machsim {

double suitability(const VehicleState& v, double offload, const CandidateView& cand,
                   double alpha, double step_duration) {
    Vec2 pred = predict_position(v, 1, step_duration);
    return qos_distance(dist(pred, cand.position), cand.radius, alpha) *
           qos_load(cand.known_load + offload, cand.capacity);
}

bool decide_request(const HandoverRequest& req, const RsuRuntime& target, Vec2 predicted) {
    if (!target.spec.enabled) return false;
    if (req.trigger == Trigger::RANGE)
        return dist(predicted, target.spec.position) <= target.spec.coverage_radius;
    return (target.assigned_load + req.offloaded_load) / target.spec.capacity <= 1.0;
}

std::optional<std::string> Strategy::admit(const VehicleState& v,
                                           const std::vector<RsuRuntime>& rsus) const {
    const RsuSpec* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& r : rsus) {
        if (!r.spec.enabled) continue;
        double d = dist(v.position, r.spec.position);
        if (d > r.spec.coverage_radius) continue;
        if (!best || d < best_d || (d == best_d && r.spec.id < best->id)) {
            best = &r.spec;
            best_d = d;
        }
    }
    if (!best) return std::nullopt;
    return best->id;
}

namespace {

// ---------------------------------------------------------------- mach ----

class MachStrategy : public Strategy {
  public:
    std::vector<HandoverRequest> decide(const RsuStepView& view) const override {
        std::vector<HandoverRequest> out;
        const StrategyParams& P = view.params;
        const RsuSpec& self = *view.self;

        std::set<std::string> requested;
        std::map<std::string, double> pending;  // load already aimed at each peer this step
        double removed = 0.0;                   // load covered by requests emitted so far

        auto predicted = [&](const TrackedVehicle& tv) {
            return predict_position(tv.state, 1, view.step_duration);
        };
        auto util_now = [&] { return (view.assigned_load - removed) / self.capacity; };
        // Margin comparisons run against the utilization the step started with;
        // only the overload stop condition tracks the requests already emitted.
        double util_raw = view.assigned_load / self.capacity;

        struct Choice {
            const CandidateView* cand;
            double score;
            double d;
        };
        // Best peer for a vehicle: highest suitability, then nearest to the
        // predicted position, then lowest id. Every trigger only considers
        // peers covering the prediction (handing a vehicle to a station that
        // cannot reach it would just bounce back next step). Load-driven moves
        // additionally need the margin test, voluntary ones the suitability
        // floor.
        auto best_candidate = [&](const TrackedVehicle& tv, bool need_margin,
                                  bool need_floor) -> std::optional<Choice> {
            Vec2 pred = predicted(tv);
            std::optional<Choice> best;
            for (const auto& c : view.peers) {
                double d = dist(pred, c.position);
                if (d > c.radius) continue;
                CandidateView adj = c;
                auto it = pending.find(c.id);
                if (it != pending.end()) adj.known_load += it->second;
                double score =
                    suitability(tv.state, tv.offload, adj, view.alpha, view.step_duration);
                if (need_floor && score < P.min_suitability) continue;
                if (need_margin) {
                    double proj = adj.known_load + tv.offload;
                    // The margin test alone lets an over-full station aim at
                    // peers beyond their hard cap; such requests are certain to
                    // be declined, so require believed feasibility as well.
                    if (!(proj / adj.capacity < util_raw - P.hysteresis)) continue;
                    if (proj > adj.capacity) continue;
                }
                bool better = !best || score > best->score ||
                              (score == best->score &&
                               (d < best->d || (d == best->d && c.id < best->cand->id)));
                if (better) best = Choice{&c, score, d};
            }
            return best;
        };
        auto emit = [&](const TrackedVehicle& tv, const Choice& c, Trigger t) {
            out.push_back({tv.state.id, self.id, c.cand->id, t, tv.offload, view.step});
            requested.insert(tv.state.id);
            pending[c.cand->id] += tv.offload;
            removed += tv.offload;
        };

        // Imperative: vehicles predicted to leave the early-trigger boundary.
        double leave_r = (1.0 - P.leaving_threshold) * self.coverage_radius;
        for (const auto& tv : view.vehicles) {
            if (dist(predicted(tv), self.position) <= leave_r) continue;
            auto c = best_candidate(tv, false, false);
            if (!c) continue;  // nobody in range: vehicle drops off at the edge
            emit(tv, *c, Trigger::RANGE);
        }

        // Forced: shed the most suitable vehicles while utilization is critical.
        while (util_now() > P.overload_threshold) {
            const TrackedVehicle* pick_v = nullptr;
            std::optional<Choice> pick;
            for (const auto& tv : view.vehicles) {  // id order; ties keep the first
                if (requested.count(tv.state.id)) continue;
                auto c = best_candidate(tv, true, false);
                if (!c) continue;
                if (!pick || c->score > pick->score) {
                    pick = c;
                    pick_v = &tv;
                }
            }
            if (!pick) break;
            emit(*pick_v, *pick, Trigger::OVERLOAD);
        }

        // Voluntary: move vehicles to clearly less utilized stations.
        for (const auto& tv : view.vehicles) {
            if (requested.count(tv.state.id)) continue;
            auto c = best_candidate(tv, true, true);
            if (!c) continue;
            emit(tv, *c, Trigger::LOAD_BALANCING);
        }
        return out;
    }
};

// ------------------------------------------------------------ baselines ----

class NearestStrategy : public Strategy {
  public:
    bool requires_coverage() const override { return false; }

    std::optional<std::string> admit(const VehicleState& v,
                                     const std::vector<RsuRuntime>& rsus) const override {
        const RsuSpec* best = nullptr;
        double best_d = std::numeric_limits<double>::infinity();
        for (const auto& r : rsus) {
            if (!r.spec.enabled) continue;
            double d = dist(v.position, r.spec.position);
            if (!best || d < best_d || (d == best_d && r.spec.id < best->id)) {
                best = &r.spec;
                best_d = d;
            }
        }
        if (!best) return std::nullopt;
        return best->id;
    }

    std::vector<HandoverRequest> decide(const RsuStepView& view) const override {
        std::vector<HandoverRequest> out;
        const RsuSpec& self = *view.self;
        for (const auto& tv : view.vehicles) {
            double d_self = dist(tv.state.position, self.position);
            const CandidateView* best = nullptr;
            double best_d = 0.0;
            for (const auto& c : view.peers) {
                double d = dist(tv.state.position, c.position);
                if (!best || d < best_d || (d == best_d && c.id < best->id)) {
                    best = &c;
                    best_d = d;
                }
            }
            // Equidistant peers never steal the vehicle from its current station.
            if (!best || best_d >= d_self) continue;
            out.push_back(
                {tv.state.id, self.id, best->id, Trigger::RANGE, tv.offload, view.step});
        }
        return out;
    }
};

class EarliestStrategy : public Strategy {
  public:
    std::vector<HandoverRequest> decide(const RsuStepView& view) const override {
        std::vector<HandoverRequest> out;
        const RsuSpec& self = *view.self;
        for (const auto& tv : view.vehicles) {
            // peers whose coverage was entered since the last beacon
            const CandidateView* best = nullptr;
            double best_d = 0.0;
            for (const auto& c : view.peers) {
                double d = dist(tv.state.position, c.position);
                if (d > c.radius) continue;
                if (dist(tv.prev_position, c.position) <= c.radius) continue;
                if (!best || d < best_d || (d == best_d && c.id < best->id)) {
                    best = &c;
                    best_d = d;
                }
            }
            if (!best) continue;
            out.push_back(
                {tv.state.id, self.id, best->id, Trigger::RANGE, tv.offload, view.step});
        }
        return out;
    }
};

class LatestStrategy : public Strategy {
  public:
    std::vector<HandoverRequest> decide(const RsuStepView& view) const override {
        std::vector<HandoverRequest> out;
        const RsuSpec& self = *view.self;
        for (const auto& tv : view.vehicles) {
            Vec2 pred = predict_position(tv.state, 1, view.step_duration);
            if (dist(pred, self.position) <= self.coverage_radius) continue;
            const CandidateView* best = nullptr;
            double best_d = 0.0;
            for (const auto& c : view.peers) {
                double d = dist(pred, c.position);
                if (d > c.radius) continue;
                if (!best || d < best_d || (d == best_d && c.id < best->id)) {
                    best = &c;
                    best_d = d;
                }
            }
            if (!best) continue;  // no coverage ahead: ride until the link drops
            out.push_back(
                {tv.state.id, self.id, best->id, Trigger::RANGE, tv.offload, view.step});
        }
        return out;
    }
};

}  // namespace

std::unique_ptr<Strategy> make_strategy(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::mach: return std::make_unique<MachStrategy>();
        case StrategyKind::nearest: return std::make_unique<NearestStrategy>();
        case StrategyKind::earliest: return std::make_unique<EarliestStrategy>();
        case StrategyKind::latest: return std::make_unique<LatestStrategy>();
    }
    throw ConfigError("unknown strategy kind");
}

}  // namespace machsim
