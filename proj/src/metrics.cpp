#include "machsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

namespace machsim {

long HandoverCounters::total() const {
    long n = 0;
    for (const auto& row : counts)
        for (long c : row) n += c;
    return n;
}

long HandoverCounters::total(Outcome o) const {
    long n = 0;
    for (const auto& row : counts) n += row[static_cast<int>(o)];
    return n;
}

double gini(const std::vector<double>& values) {
    if (values.empty()) throw SimError("gini: empty input");
    size_t n = values.size();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    if (mean == 0.0) return 0.0;
    double sum = 0.0;
    for (double a : values)
        for (double b : values) sum += std::abs(a - b);
    return sum / (2.0 * n * n * mean);
}

namespace {
double percentile(const std::vector<double>& sorted, double q) {
    double rank = q * (sorted.size() - 1);
    size_t lo = static_cast<size_t>(rank);
    size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = rank - lo;
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}
}  // namespace

QosSnapshot qos_snapshot(std::vector<double> values) {
    QosSnapshot s;
    s.vehicle_count = static_cast<int>(values.size());
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.q25 = percentile(values, 0.25);
    s.q75 = percentile(values, 0.75);
    double sum = 0.0;
    for (double v : values) sum += v;
    s.avg = sum / values.size();
    return s;
}

void classify_and_count(HandoverCounters& c, Trigger t, Outcome o) { ++c.at(t, o); }

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

void write_metrics_csv(std::ostream& out, const MetricsSeries& m) {
    out << "step,gini,qos_min,qos_q25,qos_avg,qos_q75,vehicle_count\n";
    for (const auto& r : m.rows)
        out << r.step << ',' << fmt(r.gini) << ',' << fmt(r.qos.min) << ',' << fmt(r.qos.q25)
            << ',' << fmt(r.qos.avg) << ',' << fmt(r.qos.q75) << ',' << r.qos.vehicle_count
            << '\n';
}

void write_metrics_json(std::ostream& out, const MetricsSeries& m) {
    nlohmann::ordered_json j;
    j["name"] = m.name;
    auto& steps = j["steps"] = nlohmann::ordered_json::array();
    for (const auto& r : m.rows) {
        steps.push_back({{"step", r.step},
                         {"gini", r.gini},
                         {"qos_min", r.qos.min},
                         {"qos_q25", r.qos.q25},
                         {"qos_avg", r.qos.avg},
                         {"qos_q75", r.qos.q75},
                         {"vehicle_count", r.qos.vehicle_count}});
    }
    auto& h = j["handovers"];
    for (Trigger t : {Trigger::RANGE, Trigger::LOAD_BALANCING, Trigger::OVERLOAD}) {
        auto& block = h[to_string(t)];
        block["success"] = m.handovers.at(t, Outcome::SUCCESS);
        block["failed"] = m.handovers.at(t, Outcome::FAILED);
    }
    j["messages"] = {{"cam", m.messages.cam},
                     {"load_share", m.messages.load_share},
                     {"handover", m.messages.handover}};
    out << j.dump(2) << '\n';
}

void write_events_csv(std::ostream& out, const std::vector<HandoverEvent>& events) {
    out << "step,vehicle_id,source,target,trigger,outcome\n";
    for (const auto& e : events)
        out << e.step << ',' << e.vehicle_id << ',' << e.source_rsu << ',' << e.target_rsu << ','
            << to_string(e.trigger) << ',' << to_string(e.outcome) << '\n';
}

double run_mean_gini(const MetricsSeries& m) {
    if (m.rows.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : m.rows) s += r.gini;
    return s / m.rows.size();
}

namespace {
template <class F>
double mean_over_occupied(const MetricsSeries& m, F f) {
    double s = 0.0;
    int n = 0;
    for (const auto& r : m.rows) {
        if (r.qos.vehicle_count == 0) continue;
        s += f(r);
        ++n;
    }
    return n ? s / n : 1.0;
}
}  // namespace

double run_mean_qos_avg(const MetricsSeries& m) {
    return mean_over_occupied(m, [](const StepRecord& r) { return r.qos.avg; });
}

double run_mean_qos_min(const MetricsSeries& m) {
    return mean_over_occupied(m, [](const StepRecord& r) { return r.qos.min; });
}

double run_min_qos(const MetricsSeries& m) {
    double lo = 1.0;
    for (const auto& r : m.rows)
        if (r.qos.vehicle_count > 0) lo = std::min(lo, r.qos.min);
    return lo;
}

}  // namespace machsim
