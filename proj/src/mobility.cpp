#include "machsim/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "machsim/rng.hpp"

namespace machsim {

namespace {

struct VehicleTrack {
    std::vector<TraceRecord> records;  // strictly time-ordered
};

double parse_num(const std::string& field, int line, const char* what) {
    try {
        size_t pos = 0;
        double v = std::stod(field, &pos);
        if (pos != field.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw TraceError("line " + std::to_string(line) + ": bad " + what + " '" + field + "'");
    }
}

// Assigns speed/direction from grid displacements: forward difference, falling
// back to the backward one on a vehicle's last step.
void fill_kinematics(std::vector<VehicleState>& pts, double dt) {
    size_t n = pts.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 disp;
        if (i + 1 < n)
            disp = pts[i + 1].position - pts[i].position;
        else if (i > 0)
            disp = pts[i].position - pts[i - 1].position;
        else
            continue;  // single-step lifetime: speed stays 0
        pts[i].speed = disp.norm() / dt;
        if (pts[i].speed > 0.0) pts[i].direction = normalized(disp);
    }
}

}  // namespace

Schedule ingest_trace(std::istream& in, double step_duration) {
    if (step_duration <= 0.0) throw TraceError("step_duration must be > 0");

    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) return {};  // empty file: empty schedule
    ++lineno;
    // tolerate a UTF-8 BOM and trailing CR
    if (line.size() >= 3 && line.compare(0, 3, "\xef\xbb\xbf") == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "time,vehicle_id,x,y")
        throw TraceError("line 1: expected header 'time,vehicle_id,x,y', got '" + line + "'");

    std::map<std::string, VehicleTrack> tracks;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) f.push_back(field);
        if (f.size() != 4)
            throw TraceError("line " + std::to_string(lineno) + ": expected 4 fields, got " +
                             std::to_string(f.size()));
        TraceRecord rec;
        rec.time = parse_num(f[0], lineno, "time");
        rec.vehicle_id = f[1];
        if (rec.vehicle_id.empty())
            throw TraceError("line " + std::to_string(lineno) + ": empty vehicle_id");
        rec.position = {parse_num(f[2], lineno, "x"), parse_num(f[3], lineno, "y")};

        auto& track = tracks[rec.vehicle_id].records;
        if (!track.empty() && rec.time <= track.back().time)
            throw TraceError("line " + std::to_string(lineno) + ": time not increasing for vehicle '" +
                             rec.vehicle_id + "'");
        track.push_back(rec);
    }

    // Resample every vehicle onto the grid t = step * dt within its record span.
    Schedule sched;
    for (const auto& [vid, track] : tracks) {
        const auto& recs = track.records;
        double t0 = recs.front().time, t1 = recs.back().time;
        int first = static_cast<int>(std::ceil(t0 / step_duration - 1e-9));
        if (first < 0) first = 0;
        int last = static_cast<int>(std::floor(t1 / step_duration + 1e-9));
        if (last < first) continue;  // span falls between grid points

        std::vector<VehicleState> pts;
        size_t seg = 0;
        for (int s = first; s <= last; ++s) {
            double t = s * step_duration;
            while (seg + 1 < recs.size() && recs[seg + 1].time < t) ++seg;
            VehicleState v;
            v.id = vid;
            if (t <= recs[seg].time || seg + 1 >= recs.size()) {
                v.position = recs[seg].position;
            } else {
                const auto& a = recs[seg];
                const auto& b = recs[seg + 1];
                double u = (t - a.time) / (b.time - a.time);
                v.position = a.position + (b.position - a.position) * u;
            }
            pts.push_back(v);
        }
        fill_kinematics(pts, step_duration);

        if (static_cast<size_t>(last) >= sched.steps.size()) sched.steps.resize(last + 1);
        for (size_t i = 0; i < pts.size(); ++i) sched.steps[first + i].push_back(pts[i]);
    }
    for (auto& step : sched.steps)
        std::sort(step.begin(), step.end(),
                  [](const VehicleState& a, const VehicleState& b) { return a.id < b.id; });
    return sched;
}

Schedule generate_synthetic(const SyntheticScenarioSpec& spec, std::uint64_t seed,
                            double step_duration, int num_steps) {
    if (spec.vehicle_count < 1) throw TraceError("synthetic: vehicle_count must be >= 1");
    if (spec.spawn_interval < 0) throw TraceError("synthetic: spawn_interval must be >= 0");
    if (spec.speed_min <= 0.0 || spec.speed_max < spec.speed_min)
        throw TraceError("synthetic: need 0 < speed_min <= speed_max");

    Schedule sched;
    sched.steps.resize(num_steps);
    std::mt19937_64 rng(mix(seed, hash_str("mobility")));

    for (int i = 0; i < spec.vehicle_count; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "v%04d", i);
        std::string id = buf;
        int s0 = i * spec.spawn_interval;
        double v = uniform(rng, spec.speed_min, spec.speed_max);
        double theta0 = uniform(rng, 0.0, 2.0 * M_PI);  // drawn even for straight roads
                                                        // to keep draws aligned per vehicle
        if (s0 >= num_steps) break;

        if (spec.kind == RoadKind::straight_road) {
            if (spec.road_length <= 0.0) throw TraceError("synthetic: road_length must be > 0");
            for (int s = s0; s < num_steps; ++s) {
                double x = (s - s0) * v * step_duration;
                if (x >= spec.road_length) break;
                VehicleState st;
                st.id = id;
                st.position = {x, 0.0};
                st.speed = v;
                st.direction = {1.0, 0.0};
                sched.steps[s].push_back(st);
            }
        } else {
            if (spec.ring_radius <= 0.0) throw TraceError("synthetic: ring_radius must be > 0");
            if (spec.dwell_steps < 1) throw TraceError("synthetic: dwell_steps must be >= 1");
            double omega = v / spec.ring_radius;  // rad/s, counter-clockwise
            int end = std::min(num_steps, s0 + spec.dwell_steps);
            for (int s = s0; s < end; ++s) {
                double th = theta0 + omega * (s - s0) * step_duration;
                VehicleState st;
                st.id = id;
                st.position = {spec.ring_radius * std::cos(th), spec.ring_radius * std::sin(th)};
                st.speed = v;
                st.direction = {-std::sin(th), std::cos(th)};
                sched.steps[s].push_back(st);
            }
        }
    }
    for (auto& step : sched.steps)
        std::sort(step.begin(), step.end(),
                  [](const VehicleState& a, const VehicleState& b) { return a.id < b.id; });
    return sched;
}

void write_trace_csv(std::ostream& out, const Schedule& sched, double step_duration) {
    out << "time,vehicle_id,x,y\n";
    char buf[128];
    for (int s = 0; s < sched.num_steps(); ++s) {
        for (const auto& v : sched.steps[s]) {
            std::snprintf(buf, sizeof buf, "%.17g,%s,%.17g,%.17g\n", s * step_duration,
                          v.id.c_str(), v.position.x, v.position.y);
            out << buf;
        }
    }
}

}  // namespace machsim
