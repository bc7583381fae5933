#include <doctest.h>

#include "rss/experiment.hpp"

using namespace rss;

TEST_CASE("plans round-trip through json") {
    ExperimentPlan p;
    p.kind = "benchmark";
    p.seed = 777;
    p.reps = 2;
    p.robot_grid = {8, 16};
    p.sim.warmup_s = 30;
    p.sim.measure_s = 60;
    auto q = ExperimentPlan::from_json(p.to_json());
    CHECK(q.kind == "benchmark");
    CHECK(q.seed == 777);
    CHECK(q.robot_grid == std::vector<int>{8, 16});
    CHECK(q.sim.measure_s == 60);
    CHECK(p.to_json() == q.to_json());
}

TEST_CASE("plan hash is stable and seed-sensitive") {
    ExperimentPlan p;
    p.kind = "simulate";
    uint64_t h1 = config_hash(p.to_json(), p.seed);
    uint64_t h2 = config_hash(p.to_json(), p.seed);
    CHECK(h1 == h2);
    CHECK(h1 != config_hash(p.to_json(), p.seed + 1));
}

TEST_CASE("re-running a plan reproduces result bodies bitwise") {
    ExperimentPlan p;
    p.kind = "benchmark";
    p.seed = 31337;
    p.reps = 1;
    p.robot_grid = {6};
    p.controllers = {"rcs", "castar"};
    p.sim.warmup_s = 30;
    p.sim.measure_s = 90;
    auto a = run_plan(p, 2);
    auto b = run_plan(p, 1);
    CHECK(a.results_csv == b.results_csv);
    CHECK(a.manifest_json == b.manifest_json);
    CHECK(a.results_csv.find("rcs,6,") != std::string::npos);
    CHECK(a.results_csv.find("castar,6,") != std::string::npos);
    // timing lives outside the deterministic body
    CHECK(a.results_csv.find("decision_ms") == std::string::npos);
    CHECK(a.timing_csv.find("decision_ms") != std::string::npos);
}

TEST_CASE("simulate plans carry per-replication rows") {
    ExperimentPlan p;
    p.kind = "simulate";
    p.seed = 4;
    p.reps = 2;
    p.sim.n_robots = 10;
    p.sim.warmup_s = 30;
    p.sim.measure_s = 60;
    auto out = run_simulate(p);
    CHECK(out.results_csv.find("\n0,rcs,12,12,") != std::string::npos);
    CHECK(out.results_csv.find("\n1,rcs,12,12,") != std::string::npos);
    auto again = run_simulate(p);
    CHECK(again.results_csv == out.results_csv);
}

TEST_CASE("estimate plans tabulate the model surface") {
    ExperimentPlan p;
    p.kind = "estimate";
    p.estimate_workers = {12, 24};
    auto out = run_estimate(p);
    CHECK(out.results_csv.find("n_h,n_v,n_w,n_r,kappa,beta") != std::string::npos);
    CHECK(out.results_csv.find("\n12,12,12,") != std::string::npos);
    CHECK(out.results_csv.find("\n12,12,24,") != std::string::npos);
}

TEST_CASE("provisioning follows the activated-VP rule") {
    AttenuationCoeffs ab{1.4, 0.012};
    // full staffing on the benchmark map: capacity 78 plus five per station
    CHECK(provisioned_robots(12, 12, 24, ab) == 78 + 120);
    CHECK(provisioned_robots(12, 12, 12, ab) == 59 + 60);
}

TEST_CASE("paper scale widens windows and replication counts") {
    ExperimentPlan p;
    p.kind = "benchmark";
    p.apply_paper_scale();
    CHECK(p.sim.measure_s == 3000);
    CHECK(p.reps == 10);
    ExperimentPlan v;
    v.kind = "validate";
    v.apply_paper_scale();
    CHECK(v.scale_grid == std::vector<int>{12, 14, 16, 18, 20});
    CHECK(v.reps == 20);
}
