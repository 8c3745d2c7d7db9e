#pragma once
#include <array>
#include <iosfwd>
#include <vector>

#include "machsim/types.hpp"

namespace machsim {

struct QosSnapshot {
    double min = 1.0;
    double q25 = 1.0;
    double avg = 1.0;
    double q75 = 1.0;
    int vehicle_count = 0;
};

struct StepRecord {
    int step = 0;
    double gini = 0.0;
    QosSnapshot qos;
};

// trigger x outcome tallies, indexed by the enum values
struct HandoverCounters {
    std::array<std::array<long, 2>, 3> counts{};

    long& at(Trigger t, Outcome o) { return counts[static_cast<int>(t)][static_cast<int>(o)]; }
    long at(Trigger t, Outcome o) const { return counts[static_cast<int>(t)][static_cast<int>(o)]; }
    long total() const;
    long total(Outcome o) const;
};

struct MessageCounters {
    long cam = 0;
    long load_share = 0;
    long handover = 0;  // request + reply per attempt, plus one transfer on success
};

struct MetricsSeries {
    std::string name;
    std::vector<StepRecord> rows;
    HandoverCounters handovers;
    MessageCounters messages;
};

// Mean absolute pairwise difference over twice the mean: sum |xi-xj| / (2 n^2 mu).
// All-zero input is perfectly equal (0); empty input throws SimError.
double gini(const std::vector<double>& values);

// Min / mean / quartiles with linear interpolation between closest ranks.
// No vehicles: the 1.0 sentinel with count 0.
QosSnapshot qos_snapshot(std::vector<double> values);

void classify_and_count(HandoverCounters& c, Trigger t, Outcome o);

// step,gini,qos_min,qos_q25,qos_avg,qos_q75,vehicle_count; doubles are printed
// round-trip exact.
void write_metrics_csv(std::ostream& out, const MetricsSeries& m);
void write_metrics_json(std::ostream& out, const MetricsSeries& m);
void write_events_csv(std::ostream& out, const std::vector<HandoverEvent>& events);

// Whole-run scalars. QoS aggregates skip steps with no vehicles (1.0 when every
// step is empty); the Gini mean runs over all steps.
double run_mean_gini(const MetricsSeries& m);
double run_mean_qos_avg(const MetricsSeries& m);
double run_mean_qos_min(const MetricsSeries& m);
double run_min_qos(const MetricsSeries& m);

}  // namespace machsim
