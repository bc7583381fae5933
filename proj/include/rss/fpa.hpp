#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rss/paths.hpp"
#include "rss/reservation.hpp"

namespace rss {

// One admissible (path, entry-cycle) choice for a demand. The cost charges
// travel time plus the cycles spent waiting for the entry.
struct FpaOption {
    int32_t path_id = -1;
    int32_t entry_offset = 0;  // cycles past `now`
    int16_t dest_station = -1;
    double cost = 0;
    std::vector<int64_t> slots;  // packed (cell << 20 | phase-within-horizon)
};

struct FpaDemand {
    int16_t station = -1;
    int32_t outlet = -1;
    double delay_penalty = 0;  // cost of keeping the robot until next cycle
    std::vector<FpaOption> options;
};

// A per-cycle assignment problem: binary path/delay choices under unit node
// capacity, demand satisfaction, and (optionally) per-station conservation
// of departures and arrivals. Node capacity already excludes slots booked in
// the reservation table at build time.
struct FpaInstance {
    double tau_c = 2.0;
    bool enforce_flow_conservation = true;
    int16_t station_count = 0;
    std::vector<FpaDemand> demands;

    std::string to_json() const;
    static FpaInstance from_json(const std::string& text);
};

struct FpaSolution {
    std::vector<int32_t> choice;  // option index per demand, -1 = delayed
    double objective = 0;
    int64_t nodes_explored = 0;
    bool proven_optimal = false;
};

// Builds the instance seen by the controller at cycle `now`: every feasible
// path for each demand, at every entry offset within the horizon, filtered
// against the reservation table.
FpaInstance make_fpa_instance(const PathFamily& family,
                              const ReservationTable& table,
                              const std::vector<std::pair<int16_t, int32_t>>&
                                  station_outlet_demands,
                              int64_t now, int horizon_cycles, double tau_e,
                              double tau_c,
                              const std::vector<char>& station_active,
                              double delay_penalty_scale = 1.0);

// Depth-first branch and bound with the all-delay incumbent. Exhausts the
// tree, so the returned solution is optimal for the instance.
FpaSolution solve_fpa_exact(const FpaInstance& inst);

// Objective of an externally produced feasible solution (throws on an
// infeasible one).
double fpa_objective(const FpaInstance& inst, const std::vector<int32_t>& choice);

bool fpa_feasible(const FpaInstance& inst, const std::vector<int32_t>& choice,
                  std::string* why = nullptr);

// heuristic objective / exact optimum, >= 1 for any feasible heuristic.
double heuristic_gap(const FpaInstance& inst,
                     const std::vector<int32_t>& heuristic_choice);

}  // namespace rss
