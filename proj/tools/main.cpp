#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "machsim/engine.hpp"
#include "machsim/metrics.hpp"
#include "machsim/scenario.hpp"
#include "machsim/sweep.hpp"

using namespace machsim;

namespace {

struct Overrides {
    std::string strategy;
    std::string interval;
    std::optional<std::uint64_t> seed;
    std::optional<double> capacity_scale;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--strategy", ov.strategy, "Override the strategy (mach|nearest|earliest|latest)");
    cmd->add_option("--interval", ov.interval, "Override the load sharing interval (steps or 'oracle')");
    cmd->add_option("--seed", ov.seed, "Override the RNG seed");
    cmd->add_option("--capacity-scale", ov.capacity_scale, "Override the RSU capacity multiplier");
}

void apply(const Overrides& ov, SimConfig& cfg) {
    if (!ov.strategy.empty()) cfg.strategy = parse_strategy(ov.strategy);
    if (!ov.interval.empty()) {
        if (ov.interval == "oracle") {
            cfg.params.load_share = LoadShareInterval::perfect();
        } else {
            int k;
            try {
                size_t pos = 0;
                k = std::stoi(ov.interval, &pos);
                if (pos != ov.interval.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ConfigError("--interval: expected a positive integer or 'oracle'");
            }
            cfg.params.load_share = LoadShareInterval::every(k);
        }
    }
    if (ov.seed) {
        cfg.seed = *ov.seed;
        cfg.load.seed = *ov.seed;
    }
    if (ov.capacity_scale) cfg.capacity_scale = *ov.capacity_scale;
}

int cmd_run(const std::string& scenario, const Overrides& ov, const std::string& out_dir) {
    SimConfig cfg = load_scenario(scenario);
    apply(ov, cfg);
    validate_config(cfg);
    RunResult res = run(cfg);
    std::string base = write_run_outputs(out_dir, cfg, res);
    const auto& h = res.metrics.handovers;
    std::cout << "wrote " << base << ".{csv,json} and " << base << "_events.csv\n"
              << "steps=" << res.metrics.rows.size() << " handovers=" << h.total()
              << " (failed=" << h.total(Outcome::FAILED) << ")"
              << " mean_qos=" << run_mean_qos_avg(res.metrics)
              << " mean_gini=" << run_mean_gini(res.metrics) << "\n";
    return 0;
}

int cmd_sweep(const std::string& scenario, const std::string& grid_path, const Overrides& ov,
              const std::string& out_dir) {
    SimConfig cfg = load_scenario(scenario);
    apply(ov, cfg);
    validate_config(cfg);
    SweepGrid grid = grid_path.empty() ? SweepGrid{{cfg.params.overload_threshold},
                                                   {cfg.params.hysteresis},
                                                   {cfg.params.min_suitability},
                                                   {cfg.params.leaving_threshold}}
                                       : load_grid(grid_path, cfg.params);
    SweepResult result = run_sweep(cfg, grid);
    for (const auto& f : result.failed)
        std::cerr << "cell (" << f.overload << "," << f.hysteresis << "," << f.min_suitability
                  << "," << f.leaving << ") failed: " << f.error << "\n";

    std::filesystem::create_directories(out_dir);
    std::string path = (std::filesystem::path(out_dir) / (cfg.name + "_sweep.csv")).string();
    std::ofstream out(path);
    if (!out) throw SimError("cannot write " + path);
    write_sweep_csv(out, result);
    std::cout << "wrote " << path << " (" << result.cells.size() << " cells";
    if (!result.failed.empty()) std::cout << ", " << result.failed.size() << " failed";
    std::cout << ")\n";
    if (!result.cells.empty()) {
        const SweepCell& best = result.cells.front();
        std::cout << "best: overload=" << best.overload << " hysteresis=" << best.hysteresis
                  << " suitability=" << best.min_suitability << " leaving=" << best.leaving
                  << " eval_sum=" << best.eval_sum << "\n";
    }
    return 0;
}

int cmd_generate(const std::string& scenario, const Overrides& ov, const std::string& out_path) {
    SimConfig cfg = load_scenario(scenario);
    apply(ov, cfg);
    validate_config(cfg);
    if (!cfg.mobility.synthetic)
        throw ConfigError("generate needs a scenario with synthetic mobility");
    Schedule sched =
        generate_synthetic(*cfg.mobility.synthetic, cfg.seed, cfg.step_duration, cfg.duration);
    std::ofstream out(out_path);
    if (!out) throw SimError("cannot write " + out_path);
    write_trace_csv(out, sched, cfg.step_duration);
    long rows = 0;
    for (const auto& s : sched.steps) rows += static_cast<long>(s.size());
    std::cout << "wrote " << out_path << " (" << rows << " records, " << sched.num_steps()
              << " steps)\n";
    return 0;
}

int cmd_validate(const std::string& scenario) {
    SimConfig cfg = load_scenario(scenario);
    validate_config(cfg);
    std::cout << scenario << ": ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge handover simulator for RSU-served vehicle fleets"};
    app.require_subcommand(1);

    std::string scenario, out_dir = "results", grid_path, out_path = "trace.csv";
    Overrides ov;

    CLI::App* runc = app.add_subcommand("run", "Simulate a scenario and export metrics");
    runc->add_option("scenario", scenario, "Scenario file")->required();
    add_override_flags(runc, ov);
    runc->add_option("--out", out_dir, "Output directory (default: results)");

    CLI::App* sweepc = app.add_subcommand("sweep", "Grid-search strategy parameters");
    sweepc->add_option("scenario", scenario, "Scenario file")->required();
    sweepc->add_option("--grid", grid_path, "Grid file with per-parameter value lists");
    add_override_flags(sweepc, ov);
    sweepc->add_option("--out", out_dir, "Output directory (default: results)");

    CLI::App* genc = app.add_subcommand("generate", "Write the synthetic mobility as a trace CSV");
    genc->add_option("scenario", scenario, "Scenario file with synthetic mobility")->required();
    add_override_flags(genc, ov);
    genc->add_option("--out", out_path, "Output trace file (default: trace.csv)");

    CLI::App* valc = app.add_subcommand("validate", "Check a scenario file and exit");
    valc->add_option("scenario", scenario, "Scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (runc->parsed()) return cmd_run(scenario, ov, out_dir);
        if (sweepc->parsed()) return cmd_sweep(scenario, grid_path, ov, out_dir);
        if (genc->parsed()) return cmd_generate(scenario, ov, out_path);
        if (valc->parsed()) return cmd_validate(scenario);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
