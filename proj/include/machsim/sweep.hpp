#pragma once
#include <iosfwd>

#include "machsim/types.hpp"

namespace machsim {

enum class Sense { lower_better, higher_better };

// Best-relative scores in [0,1]: min/observed for costs, observed/max for
// benefits, with 0/0 counting as a perfect 1. The best cell always scores
// exactly 1. Values must be non-negative.
std::vector<double> normalize(const std::vector<double>& values, Sense sense);

struct SweepGrid {
    std::vector<double> overload{0.7};
    std::vector<double> hysteresis{0.05};
    std::vector<double> min_suitability{0.3};
    std::vector<double> leaving{0.0};
};

struct SweepCell {
    double overload = 0.0;
    double hysteresis = 0.0;
    double min_suitability = 0.0;
    double leaving = 0.0;
    long handovers = 0;    // every attempt, successful or not
    double qos_avg = 0.0;  // run mean of the per-step average
    double qos_min = 0.0;  // run mean of the per-step minimum
    double gini = 0.0;     // run mean of the per-step Gini
    double eval_sum = 0.0;
    double eval_product = 0.0;
};

struct FailedCell {
    double overload, hysteresis, min_suitability, leaving;
    std::string error;
};

struct SweepResult {
    std::vector<SweepCell> cells;  // ranked: eval_sum desc, then eval_product desc
    std::vector<FailedCell> failed;
};

// Runs the base config once per parameter combination (same seed and mobility
// for every cell), scores the four raw metrics against the best cell and ranks.
// Cells whose run throws are reported in `failed` without aborting the sweep.
SweepResult run_sweep(const SimConfig& base, const SweepGrid& grid);

// overload,hysteresis,suitability,leaving,handovers,qos_avg,qos_min,gini,eval_sum,eval_product
void write_sweep_csv(std::ostream& out, const SweepResult& r);

}  // namespace machsim
