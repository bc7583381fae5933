#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rss/ldp.hpp"
#include "rss/model.hpp"
#include "rss/sim.hpp"

namespace rss {

// A fully-specified experiment; no hidden defaults affect results. Plans
// parse from JSON documents and can be tightened to publication scale.
struct ExperimentPlan {
    std::string kind;  // simulate | benchmark | estimate | calibrate |
                       // optimize | sweep | validate
    uint64_t seed = 20240601;
    int reps = 3;
    bool paper_scale = false;

    // simulation-backed kinds
    SimConfig sim;
    std::vector<int> robot_grid{40, 80, 120};
    std::vector<std::string> controllers{"rcs", "castar"};

    // calibrate / validate
    std::vector<int> scale_grid{12, 16, 20};
    std::vector<int> worker_grid;  // empty = derived from the map
    AttenuationCoeffs coeffs{1.4, 0.012};
    bool coeffs_from_calibration = false;

    // estimate
    std::vector<int> estimate_workers;
    std::vector<double> estimate_robots;

    // optimize / sweep
    DemandSpec demand;
    CostParams costs;
    LdpModel ldp_model;
    std::vector<double> th_grid;
    std::vector<double> ms_grid;
    std::vector<double> mw_grid;
    std::vector<int> no_grid{100, 400};

    static ExperimentPlan from_json(const std::string& text);
    std::string to_json() const;
    void apply_paper_scale();
};

// Experiment outputs: a deterministic results CSV, a non-deterministic
// timing CSV (wall-clock columns live only here), and a provenance manifest.
struct ExperimentOutput {
    std::string results_csv;
    std::string timing_csv;
    std::string manifest_json;
    std::string trace_csv;  // only when the plan asks for traces
};

uint64_t config_hash(const std::string& canonical_plan_json, uint64_t seed);

ExperimentOutput run_plan(const ExperimentPlan& plan, int workers = 1);

// Individual runners (used by the CLI subcommands and the acceptance suite).
ExperimentOutput run_simulate(const ExperimentPlan& plan);
ExperimentOutput run_benchmark(const ExperimentPlan& plan);
ExperimentOutput run_benchmark(const ExperimentPlan& plan, int workers);
ExperimentOutput run_estimate(const ExperimentPlan& plan);
ExperimentOutput run_calibrate(const ExperimentPlan& plan);
ExperimentOutput run_validate(const ExperimentPlan& plan);
ExperimentOutput run_optimize(const ExperimentPlan& plan);
ExperimentOutput run_sweep(const ExperimentPlan& plan);

// Shared helpers.
std::string format_double(double v);
int provisioned_robots(int n_h, int n_v, int n_w, const AttenuationCoeffs& ab);
CalibrationResult calibrate_on_simulator(const ExperimentPlan& plan,
                                         std::vector<std::string>* rows);

}  // namespace rss
