#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rss/geometry.hpp"

namespace rss {

// Safe interval [t_lo, t_hi) on a cell.
struct SippInterval {
    int64_t t_lo = 0;
    int64_t t_hi = 0;
};

// Blocked phase intervals per cell, built from committed robot plans. A cell
// occupied at phase t is withheld for [t-1, t+1]: the margin behind keeps a
// later-planned robot from standing one phase ahead of this one, the margin
// in front keeps followers out of freshly vacated cells.
class ObstacleTimeline {
  public:
    explicit ObstacleTimeline(int cell_count) : blocked_(cell_count) {}

    void block(int32_t cell, int64_t t) { insert(cell, t - 1, t + 2); }
    void block_range(int32_t cell, int64_t lo, int64_t hi) { insert(cell, lo, hi); }

    // Drops intervals that end at or before `t`.
    void forget_before(int64_t t);

    bool is_blocked(int32_t cell, int64_t t) const;
    std::vector<SippInterval> safe_intervals(int32_t cell, int64_t from,
                                             int64_t horizon) const;
    const std::vector<std::pair<int64_t, int64_t>>& raw(int32_t cell) const {
        return blocked_[cell];
    }

  private:
    void insert(int32_t cell, int64_t lo, int64_t hi);
    std::vector<std::vector<std::pair<int64_t, int64_t>>> blocked_;
};

struct TimedPath {
    std::vector<int32_t> cells;  // position per phase, cells[i] at t = start + i
    int64_t start = 0;
    int64_t end() const { return start + static_cast<int64_t>(cells.size()) - 1; }
};

struct SippGoal {
    Cell cell;
    Dir heading;  // axis the robot must be moving on when it gets there
};

struct SippOptions {
    // Extra phases spent rotating in place before a crossing move; the
    // sorting robots spin at omega_r, which costs up to one phase.
    int turn_pause_phases = 1;
    // Restrict direction changes to left turns, matching the sorting
    // robots' movement rule.
    bool left_turns_only = false;
};

// Location-time A* over safe intervals on the directed aisle graph, with the
// movement axis folded into the search state so crossing moves can carry a
// rotation pause. Moves take one phase; waiting is allowed inside a safe
// interval. When `can_delay_start` is set the robot may stay off the grid
// (waiting zone) and enter later.
class SippPlanner {
  public:
    explicit SippPlanner(const GridLayout& layout, SippOptions opt = {})
        : g_(&layout), opt_(opt) {}

    std::optional<TimedPath> plan(const ObstacleTimeline& obstacles, Cell start,
                                  Dir start_heading, int64_t start_earliest,
                                  const std::vector<SippGoal>& goals,
                                  int64_t horizon, bool can_delay_start) const;

    // Free-flow cost-to-go (phases, turn pauses included) per movement state
    // (cell index * 2 + axis); -1 marks unreachable states.
    const std::vector<int32_t>& dist_to(const SippGoal& goal) const;

    static int axis_of(Dir d) { return d == Dir::South || d == Dir::North; }

  private:
    const GridLayout* g_;
    SippOptions opt_;
    mutable std::unordered_map<int64_t, std::vector<int32_t>> dist_cache_;
};

}  // namespace rss
