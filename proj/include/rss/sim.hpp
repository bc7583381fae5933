#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rss/geometry.hpp"
#include "rss/kinematics.hpp"
#include "rss/paths.hpp"
#include "rss/rcs.hpp"
#include "rss/sipp.hpp"

namespace rss {

enum class ControllerKind { Rcs, CaStar };
enum class ReturnPolicy { NearestExit, LeastLoaded, Origin };

struct SimConfig {
    int n_h = 12;
    int n_v = 12;
    double cell_len = 1.0;
    int n_stations = 0;  // 0 = every slot staffed
    ControllerKind controller = ControllerKind::Rcs;
    int n_robots = 40;
    double warmup_s = 120.0;
    double measure_s = 600.0;
    uint64_t seed = 1;
    RcsParams rcs{0.5, 2.0, 2.0};
    int horizon_cycles = 16;       // N_t, per-cycle search range
    int window_cycles = 64;        // N_p, reservation table span
    int max_turns = 3;
    double station_load_period_s = 0;  // 0 = one load per cycle (1/r_ls = tau_c)
    PathTieBreak rcs_tie_break = PathTieBreak::MinCost;
    int rcs_wait_weight = 1;  // rank cost of one entry cycle, in phases
    ReturnPolicy castar_return = ReturnPolicy::Origin;
    SippOptions castar_sipp{};
    int castar_drop_pause_phases = 2;  // halt to release the parcel
    int castar_horizon_phases = 2048;
    bool collect_trace = false;

    void validate() const;
};

struct ConflictCounts {
    int64_t vertex = 0;
    int64_t following = 0;
    int64_t swapping = 0;
    int64_t cycle = 0;
    bool clean() const { return vertex + following + swapping + cycle == 0; }
};

struct TraceRow {
    int64_t t = 0;
    int32_t robot = 0;
    int32_t cell = 0;
};

struct SimMetrics {
    int64_t completed = 0;          // drops inside the measure window
    double throughput = 0;          // sorts/h
    double avg_service_time = 0;    // network entry -> drop, seconds
    double avg_lead_time = 0;       // load -> drop, dispatch waits included
    double avg_full_cycle_time = 0; // load -> arrival at the next station
    double avg_service_distance_m = 0;      // full delivery path
    double avg_service_distance_cells = 0;
    double avg_robots_in_network = 0;
    double decision_ms_per_cycle = 0;  // wall clock; never part of result CSVs
    int64_t plan_failures = 0;
    ConflictCounts conflicts;
    int admission_violations = 0;  // entries above one per cycle per entrance
    bool vp_count_constant = true;
    std::vector<int64_t> segment_flow;  // traversals per (cell, dir), measured
    std::vector<TraceRow> trace;        // only when collect_trace
};

SimMetrics run_simulation(const SimConfig& cfg);
SimMetrics run_simulation(const SimConfig& cfg, const GridLayout& layout,
                          const PathFamily& family);

struct MetricStat {
    double mean = 0;
    double stderr_ = 0;
};

struct ReplicationSummary {
    int n_reps = 0;
    MetricStat throughput, service_time, full_cycle_time, distance_m,
        robots_in_network, decision_ms;
    std::vector<SimMetrics> runs;
};

// Independent replications; replication r uses seed split(cfg.seed, r).
ReplicationSummary replicate(const SimConfig& cfg, int n_reps);

uint64_t split_seed(uint64_t master, uint64_t stream);

// Directed traversal counts per (cell, dir) from a recorded trace.
std::vector<int64_t> flow_heatmap(const GridLayout& layout,
                                  const std::vector<TraceRow>& trace);

std::string trace_to_csv(const GridLayout& layout,
                         const std::vector<TraceRow>& trace);

}  // namespace rss
