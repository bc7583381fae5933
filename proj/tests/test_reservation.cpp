#include <doctest.h>

#include <algorithm>
#include <set>

#include "rss/reservation.hpp"

using namespace rss;

namespace {

struct Fixture {
    GridLayout g = build_layout(4, 4, 1.0, 8);
    PathFamily fam = enumerate_feasible_paths(g, 3);

    const FeasiblePath& path_with_turns(int turns, int min_margin = 3) const {
        for (const auto& p : fam.paths()) {
            if (p.turn_count != turns) continue;
            if (turns == 0) return p;
            // interior turn: enough runway on both aisles for full blocks
            if (p.reserved.size() == size_t(p.length_cells + 4 * turns)) return p;
        }
        REQUIRE(false);
        return fam.paths().front();
    }
};

}  // namespace

TEST_CASE("empty table admits at the requested cycle") {
    Fixture f;
    ReservationTable table(f.g, 64);
    const auto& p = f.fam.paths().front();
    CHECK(table.entry_cycle(p, 0, 16) == 0);
    CHECK(table.entry_cycle(p, 7, 16) == 7);
}

TEST_CASE("a reserved path pushes the next entry one cycle out") {
    Fixture f;
    ReservationTable table(f.g, 64);
    const auto& p = f.fam.paths().front();
    table.reserve(p, 3, /*robot=*/1);
    CHECK(table.entry_cycle(p, 3, 16) == 4);
}

TEST_CASE("saturating the horizon yields the beyond-horizon sentinel") {
    Fixture f;
    ReservationTable table(f.g, 64);
    const auto& p = f.fam.paths().front();
    for (int e = 0; e < 16; ++e) table.reserve(p, e, e);
    CHECK(table.entry_cycle(p, 0, 16) == kBeyondHorizon);
    CHECK(table.entry_cycle(p, 0, 17) == 16);
}

TEST_CASE("double reservation is a hard fault") {
    Fixture f;
    ReservationTable table(f.g, 64);
    const auto& p = f.fam.paths().front();
    table.reserve(p, 5, 1);
    CHECK_THROWS_AS(table.reserve(p, 5, 2), std::logic_error);
}

TEST_CASE("straight paths reserve one slot per cell") {
    Fixture f;
    const auto& p = f.path_with_turns(0);
    CHECK(p.reserved.size() == size_t(p.length_cells));
    CHECK(p.reserved.size() == p.trace.size());
}

TEST_CASE("a turn withholds eight phases across the two VPs") {
    Fixture f;
    const auto& p = f.path_with_turns(1);
    // counted by hand: every ride slot plus three outgoing-block slots past
    // the turn cell plus the two incoming-block slots ahead of the landing
    // point minus the rides already inside the block = length + 4
    CHECK(p.reserved.size() == size_t(p.length_cells) + 4);

    // the eight turn slots: four consecutive phases on each aisle from the
    // turn cell, starting at the arrival phase (outgoing) and at the joined
    // VP's passage (incoming)
    int x = -1;
    for (size_t i = 1; i < p.trace.size(); ++i)
        if (p.trace[i] == p.trace[i - 1]) {
            x = p.trace[i];
            break;
        }
    REQUIRE(x >= 0);
    int arrivals = 0;
    for (const auto& s : p.reserved)
        if (s.cell == x) ++arrivals;
    CHECK(arrivals == 2);  // ride-through phase and joined-VP phase
}

TEST_CASE("release advances the watermark and old slots expire") {
    Fixture f;
    ReservationTable table(f.g, 8);
    const auto& p = f.fam.paths().front();
    table.reserve(p, 0, 9);
    CHECK(table.entry_cycle(p, 0, 4) == 1);
    table.release_expired(8);  // path at cycle 0 has left the network
    CHECK(table.entry_cycle(p, 8, 4) == 8);
    CHECK_THROWS(table.release_expired(2));  // watermark cannot move back
}

TEST_CASE("occupancy export lists reserved slots in clock order") {
    Fixture f;
    ReservationTable table(f.g, 64);
    const auto& p = f.fam.paths().front();
    table.reserve(p, 0, 42);
    std::string csv = table.to_csv();
    CHECK(csv.rfind("cycle,cell_r,cell_c,phase,robot", 0) == 0);
    CHECK(csv.find(",42\n") != std::string::npos);
    size_t rows = std::count(csv.begin(), csv.end(), '\n') - 1;
    CHECK(rows == p.reserved.size());
}

TEST_CASE("paths longer than the window are rejected") {
    Fixture f;
    ReservationTable tiny(f.g, 2);
    CHECK_THROWS(tiny.entry_cycle(f.fam.paths().front(), 0, 2));
}
