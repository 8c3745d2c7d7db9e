#include "machsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <ostream>
#include <thread>
#include <tuple>

#include "machsim/engine.hpp"
#include "machsim/metrics.hpp"

namespace machsim {

std::vector<double> normalize(const std::vector<double>& values, Sense sense) {
    std::vector<double> out(values.size());
    if (values.empty()) return out;
    for (double v : values)
        if (v < 0.0) throw SimError("normalize: negative value");
    if (sense == Sense::lower_better) {
        double lo = *std::min_element(values.begin(), values.end());
        for (size_t i = 0; i < values.size(); ++i)
            out[i] = values[i] == 0.0 ? 1.0 : lo / values[i];
    } else {
        double hi = *std::max_element(values.begin(), values.end());
        for (size_t i = 0; i < values.size(); ++i)
            out[i] = hi == 0.0 ? 1.0 : values[i] / hi;
    }
    return out;
}

SweepResult run_sweep(const SimConfig& base, const SweepGrid& grid) {
    validate_config(base);
    Schedule sched = build_schedule(base);  // one mobility realization for every cell

    struct Combo {
        double ov, hy, su, le;
    };
    std::vector<Combo> combos;
    for (double ov : grid.overload)
        for (double hy : grid.hysteresis)
            for (double su : grid.min_suitability)
                for (double le : grid.leaving) combos.push_back({ov, hy, su, le});

    struct RawCell {
        Combo combo;
        long handovers = 0;
        double qos_avg = 0, qos_min = 0, gini = 0;
        bool ok = false;
        std::string error;
    };
    std::vector<RawCell> raw(combos.size());

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < combos.size(); i = next.fetch_add(1)) {
            RawCell& cell = raw[i];
            cell.combo = combos[i];
            SimConfig cfg = base;
            cfg.params.overload_threshold = combos[i].ov;
            cfg.params.hysteresis = combos[i].hy;
            cfg.params.min_suitability = combos[i].su;
            cfg.params.leaving_threshold = combos[i].le;
            try {
                RunResult res = run_on_schedule(cfg, sched);
                cell.handovers = res.metrics.handovers.total();
                cell.qos_avg = run_mean_qos_avg(res.metrics);
                cell.qos_min = run_mean_qos_min(res.metrics);
                cell.gini = run_mean_gini(res.metrics);
                cell.ok = true;
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
        }
    };
    unsigned n_threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                         combos.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    SweepResult result;
    std::vector<double> handovers, qos_avg, qos_min, gini;
    for (const auto& c : raw) {
        if (!c.ok) {
            result.failed.push_back({c.combo.ov, c.combo.hy, c.combo.su, c.combo.le, c.error});
            continue;
        }
        handovers.push_back(static_cast<double>(c.handovers));
        qos_avg.push_back(c.qos_avg);
        qos_min.push_back(c.qos_min);
        gini.push_back(c.gini);
    }
    auto n_ho = normalize(handovers, Sense::lower_better);
    auto n_qa = normalize(qos_avg, Sense::higher_better);
    auto n_qm = normalize(qos_min, Sense::higher_better);
    auto n_gi = normalize(gini, Sense::lower_better);

    size_t k = 0;
    for (const auto& c : raw) {
        if (!c.ok) continue;
        SweepCell cell;
        cell.overload = c.combo.ov;
        cell.hysteresis = c.combo.hy;
        cell.min_suitability = c.combo.su;
        cell.leaving = c.combo.le;
        cell.handovers = c.handovers;
        cell.qos_avg = c.qos_avg;
        cell.qos_min = c.qos_min;
        cell.gini = c.gini;
        cell.eval_sum = n_ho[k] + n_qa[k] + n_qm[k] + n_gi[k];
        cell.eval_product = n_ho[k] * n_qa[k] * n_qm[k] * n_gi[k];
        result.cells.push_back(cell);
        ++k;
    }
    std::sort(result.cells.begin(), result.cells.end(),
              [](const SweepCell& a, const SweepCell& b) {
                  if (a.eval_sum != b.eval_sum) return a.eval_sum > b.eval_sum;
                  if (a.eval_product != b.eval_product) return a.eval_product > b.eval_product;
                  return std::tie(a.overload, a.hysteresis, a.min_suitability, a.leaving) <
                         std::tie(b.overload, b.hysteresis, b.min_suitability, b.leaving);
              });
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
    out << "overload,hysteresis,suitability,leaving,handovers,qos_avg,qos_min,gini,"
           "eval_sum,eval_product\n";
    char buf[256];
    for (const auto& c : r.cells) {
        std::snprintf(buf, sizeof buf, "%g,%g,%g,%g,%ld,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      c.overload, c.hysteresis, c.min_suitability, c.leaving, c.handovers,
                      c.qos_avg, c.qos_min, c.gini, c.eval_sum, c.eval_product);
        out << buf;
    }
}

}  // namespace machsim
