#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rss/paths.hpp"

namespace rss {

constexpr int64_t kBeyondHorizon = -1;

// Rolling occupancy of VP slots, one robot per (cell, phase). Slots are kept
// for a window of `window_cycles` cycles; the watermark advances with the
// simulation clock and slots behind it expire automatically.
class ReservationTable {
  public:
    ReservationTable(const GridLayout& layout, int window_cycles);

    int window_cycles() const { return window_cycles_; }
    int64_t now_cycle() const { return now_cycle_; }

    // Absolute phase of a path slot when the path is entered at cycle e.
    static int64_t slot_phase(const FeasiblePath& p, int64_t e, const PathSlot& s) {
        return 4 * e + p.entry_residue + s.t;
    }

    bool path_free_at(const FeasiblePath& p, int64_t entry) const;

    // Smallest cycle e in [now, now + search_cycles) at which every slot of
    // the path (turn blocks included) is free; kBeyondHorizon if none. The
    // path must fit inside the table window.
    int64_t entry_cycle(const FeasiblePath& p, int64_t now, int search_cycles) const;

    // Books every slot. Booking an occupied slot is an invariant breach and
    // throws std::logic_error.
    void reserve(const FeasiblePath& p, int64_t entry, int32_t robot);

    // Advances the watermark; slots whose VPs have left the window expire.
    void release_expired(int64_t now_cycle);

    // Occupied (cycle, cell, phase, robot) rows, for trace debugging.
    std::string to_csv() const;

    int32_t occupant(int32_t cell, int64_t phase) const;

  private:
    struct Slot {
        int64_t phase = -1;
        int32_t robot = -1;
    };
    size_t ring_index(int32_t cell, int64_t phase) const {
        return static_cast<size_t>(cell) * window_phases_ +
               static_cast<size_t>(phase % window_phases_);
    }

    const GridLayout* layout_;
    int window_cycles_;
    int64_t window_phases_;
    int64_t now_cycle_ = 0;
    std::vector<Slot> slots_;
};

}  // namespace rss
