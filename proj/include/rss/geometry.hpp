#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace rss {

// Cell coordinates on the sorting-zone grid. Row 0 is the top edge, column 0
// the left edge. Aisle cells live on even rows/columns of a
// (2*n_h-1) x (2*n_v-1) lattice; outlet cells fill the odd/odd positions.
struct Cell {
    int16_t r = 0;
    int16_t c = 0;

    friend bool operator==(Cell a, Cell b) { return a.r == b.r && a.c == b.c; }
    friend bool operator!=(Cell a, Cell b) { return !(a == b); }
    friend bool operator<(Cell a, Cell b) {
        return a.r != b.r ? a.r < b.r : a.c < b.c;
    }
};

enum class Dir : uint8_t { East = 0, South = 1, West = 2, North = 3 };

constexpr int dr(Dir d) {
    switch (d) {
        case Dir::South: return 1;
        case Dir::North: return -1;
        default: return 0;
    }
}
constexpr int dc(Dir d) {
    switch (d) {
        case Dir::East: return 1;
        case Dir::West: return -1;
        default: return 0;
    }
}

// Left turn as seen by the robot (row axis points down the page).
constexpr Dir left_of(Dir d) {
    switch (d) {
        case Dir::East: return Dir::North;
        case Dir::North: return Dir::West;
        case Dir::West: return Dir::South;
        case Dir::South: return Dir::East;
    }
    return Dir::East;
}

inline Cell step(Cell x, Dir d, int n = 1) {
    return Cell{static_cast<int16_t>(x.r + n * dr(d)),
                static_cast<int16_t>(x.c + n * dc(d))};
}

const char* dir_name(Dir d);

enum class NodeKind : uint8_t { Conflict, Unloading, Outlet, Entrance, Exit };

enum class Side : uint8_t { Top = 0, Bottom = 1, Left = 2, Right = 3 };

const char* side_name(Side s);

// One-way aisle. Horizontal aisle i sits on row 2i, vertical aisle j on
// column 2j. Adjacent parallel aisles run in opposite directions; the
// perimeter circulates counter-clockwise so that every entrance can reach
// every outlet with at most three left turns.
struct Aisle {
    bool horizontal = true;
    int index = 0;   // 0..n_h-1 or 0..n_v-1
    Dir dir = Dir::East;
    Cell first;      // first in-network cell in travel direction
    Cell last;       // last in-network cell (the exit cell)
    int length = 0;  // number of in-network cells
};

// A loading station owns the entrance of one aisle and the exit of the
// adjacent anti-parallel aisle on the same side. Entrance/exit cells sit one
// step outside the aisle grid, in the loading zone.
struct StationSite {
    int id = 0;
    Side side = Side::Top;
    int index_along_side = 0;  // slot ordinal within the side
    int entrance_aisle = 0;    // global aisle id
    int exit_aisle = 0;
    Cell entrance_cell;        // virtual cell just outside the grid
    Cell exit_cell;
    bool active = true;
};

struct GridLayout {
    int n_h = 0;         // horizontal aisle count (even, >= 4)
    int n_v = 0;         // vertical aisle count (even, >= 4)
    double cell_len = 1.0;  // D, meters

    int rows = 0;  // 2*n_h - 1
    int cols = 0;  // 2*n_v - 1

    std::vector<Aisle> aisles;          // h-aisles then v-aisles
    std::vector<StationSite> stations;  // all slots; `active` marks staffed ones

    int aisle_id_h(int i) const { return i; }
    int aisle_id_v(int j) const { return n_h + j; }

    bool in_grid(Cell x) const {
        return x.r >= 0 && x.r < rows && x.c >= 0 && x.c < cols;
    }
    bool is_aisle_cell(Cell x) const {
        return in_grid(x) && (x.r % 2 == 0 || x.c % 2 == 0);
    }
    bool is_outlet(Cell x) const {
        return in_grid(x) && x.r % 2 == 1 && x.c % 2 == 1;
    }
    NodeKind kind(Cell x) const;

    Dir h_dir(int i) const { return i % 2 == 0 ? Dir::West : Dir::East; }
    Dir v_dir(int j) const { return j % 2 == 0 ? Dir::South : Dir::North; }

    int outlet_count() const { return (n_h - 1) * (n_v - 1); }
    int outlet_id(Cell x) const {
        return (x.r - 1) / 2 * (n_v - 1) + (x.c - 1) / 2;
    }
    Cell outlet_cell(int id) const {
        return Cell{static_cast<int16_t>(2 * (id / (n_v - 1)) + 1),
                    static_cast<int16_t>(2 * (id % (n_v - 1)) + 1)};
    }

    int cell_index(Cell x) const { return x.r * cols + x.c; }
    int cell_count() const { return rows * cols; }

    // Directed successors along the aisles (1 for unloading cells, 2 for
    // conflict cells, fewer at the grid boundary).
    int out_neighbors(Cell x, Cell out[2]) const;

    // Outlets served from an unloading cell (0..2 of them).
    int outlets_beside(Cell u, Cell out[2]) const;

    // Aisle the cell belongs to for the given movement direction.
    const Aisle& aisle_of(Cell x, Dir d) const;

    std::vector<int> active_station_ids() const;
    int station_count_active() const;
};

// Builds the aisle network. `n_stations` station slots are distributed over
// the four sides proportionally to each side's aisle count (largest
// remainder, ties resolved in side order Top, Bottom, Left, Right) and the
// allocation is centered on each side.
//
// Throws std::invalid_argument for odd or undersized aisle counts and for
// station counts outside [1, n_h + n_v].
GridLayout build_layout(int n_h, int n_v, double cell_len, int n_stations);

// Re-marks the active stations of an existing layout (same placement rule).
void set_active_stations(GridLayout& layout, int n_stations);

// Reachability of outlets from station entrances using at most `max_turns`
// left turns. Result: outlet id -> sorted station ids that can reach it.
std::vector<std::vector<int>> classify_reachability(const GridLayout& layout,
                                                    int max_turns);

// Stable text serialization (golden-test format).
std::string serialize_layout(const GridLayout& layout);
GridLayout parse_layout(const std::string& text);

}  // namespace rss
