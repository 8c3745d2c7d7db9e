#include "machsim/knowledge.hpp"

namespace machsim {

std::vector<CamMessage> emit_cams(int step, int cam_interval,
                                  const std::vector<VehicleState>& vehicles,
                                  const std::map<std::string, std::string>& connections) {
    std::vector<CamMessage> out;
    if (cam_interval < 1 || step % cam_interval != 0) return out;
    for (const auto& v : vehicles) {
        auto it = connections.find(v.id);
        if (it == connections.end()) continue;
        out.push_back({step, it->second, v});
    }
    return out;
}

int share_loads(int step, std::vector<RsuRuntime>& rsus, LoadShareInterval interval) {
    if (interval.oracle) {
        for (auto& r : rsus) {
            if (!r.spec.enabled) continue;
            for (const auto& peer : rsus) {
                if (&peer == &r || !peer.spec.enabled) continue;
                r.peer_knowledge[peer.spec.id] = {peer.assigned_load, step};
            }
        }
        return 0;
    }
    if (step % interval.steps != 0) return 0;
    int messages = 0;
    // Loads are snapshotted first so the broadcast is order-independent.
    std::vector<std::pair<std::string, double>> snapshot;
    for (const auto& r : rsus)
        if (r.spec.enabled) snapshot.emplace_back(r.spec.id, r.assigned_load);
    for (auto& r : rsus) {
        if (!r.spec.enabled) continue;
        for (const auto& [id, load] : snapshot) {
            if (id == r.spec.id) continue;
            r.peer_knowledge[id] = {load, step};
            ++messages;
        }
    }
    return messages;
}

}  // namespace machsim
