#pragma once

#include <cstdint>
#include <vector>

#include "rss/geometry.hpp"

namespace rss {

// --------------------------------------------------------------------------
// Virtual-platoon lattice.
//
// VPs advance one cell per phase (tau_e). Each aisle releases one VP per
// cycle (4 phases) at its entrance. Release phases are staggered so that
// horizontal VPs only stand on conflict cells at even phases and vertical
// VPs only at odd phases, which rules out vertex conflicts between crossing
// streams, and so that the in-network VP count (exit cells excluded) is
// constant and equals [n_h(n_v-1) + n_v(n_h-1)] / 2.
// --------------------------------------------------------------------------

// Phase residue (mod 4) at which a VP of this aisle occupies its first
// in-network cell.
int entry_phase_residue(const GridLayout& layout, int aisle_id);

// Phase residue (mod 4) at which VPs of the aisle containing `cell` (for the
// given travel direction) pass that cell.
int pass_residue(const GridLayout& layout, Cell cell, Dir d);

// Number of VPs strictly inside the network (exit cells excluded) at phase t.
int vp_count_in_network(const GridLayout& layout, int64_t t);

// --------------------------------------------------------------------------
// Feasible paths.
// --------------------------------------------------------------------------

struct PathSlot {
    int32_t cell = 0;  // cell index in the layout
    int16_t t = 0;     // phase offset from network entry
};

struct OutletPass {
    int32_t outlet = 0;  // outlet id
    int16_t t = 0;       // phase offset of the earliest drop opportunity
};

// A chain of VP occupations linking two station slots through the network,
// with at most three left turns. Times are phase offsets relative to entry;
// using the path at entry cycle e places slot (cell, t) at absolute phase
// 4*e + entry_residue + t.
struct FeasiblePath {
    int32_t id = -1;
    int16_t origin_station = -1;
    int16_t dest_station = -1;
    int8_t turn_count = 0;
    int16_t length_cells = 0;    // cells touched, revisits counted
    int16_t total_phases = 0;    // trace length; travel time = phases * tau_e
    int8_t entry_residue = 0;    // phase residue of the entrance aisle

    std::vector<int32_t> trace;       // robot cell per phase offset 0..total_phases-1
    std::vector<PathSlot> reserved;   // slots to book: rides plus 4+4 turn blocks
    std::vector<OutletPass> outlets;  // sorted by outlet id

    double travel_time(double tau_e) const { return total_phases * tau_e; }
    bool passes_outlet(int outlet_id, int16_t* t_out = nullptr) const;
};

class PathFamily {
  public:
    PathFamily() = default;
    const GridLayout& layout() const { return *layout_; }
    int max_turns() const { return max_turns_; }

    const std::vector<FeasiblePath>& paths() const { return paths_; }
    const FeasiblePath& path(int id) const { return paths_[id]; }

    // Path ids from station i passing outlet k, sorted by
    // (turn_count, length, lexicographic trace).
    const std::vector<int32_t>& from_station_via(int station, int outlet) const {
        return index_[station][outlet];
    }
    // Same set ordered by (travel phases, turn_count, lexicographic trace).
    const std::vector<int32_t>& from_station_via_shortest(int station,
                                                          int outlet) const {
        return index_short_[station][outlet];
    }
    const std::vector<int32_t>& from_station(int station) const {
        return by_station_[station];
    }

    friend PathFamily enumerate_feasible_paths(const GridLayout& layout,
                                               int max_turns);

  private:
    const GridLayout* layout_ = nullptr;
    int max_turns_ = 0;
    std::vector<FeasiblePath> paths_;
    std::vector<std::vector<std::vector<int32_t>>> index_;
    std::vector<std::vector<std::vector<int32_t>>> index_short_;
    std::vector<std::vector<int32_t>> by_station_;
};

// Enumerates every feasible path with up to `max_turns` left turns, from all
// station slots (active or not). Complete for the turn budget.
PathFamily enumerate_feasible_paths(const GridLayout& layout, int max_turns = 3);

}  // namespace rss
