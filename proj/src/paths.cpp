#include "rss/paths.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rss {

int entry_phase_residue(const GridLayout& layout, int aisle_id) {
    const Aisle& a = layout.aisles[aisle_id];
    return a.horizontal ? 2 * (a.index & 1) : 1 + 2 * (a.index & 1);
}

namespace {

int dist_from_first(const Aisle& a, Cell x) {
    if (a.horizontal)
        return a.dir == Dir::East ? x.c - a.first.c : a.first.c - x.c;
    return a.dir == Dir::South ? x.r - a.first.r : a.first.r - x.r;
}

int cells_remaining(const Aisle& a, Cell x) {  // after x, in travel direction
    return a.length - 1 - dist_from_first(a, x);
}

int global_aisle_id(const GridLayout& g, const Aisle& a) {
    return a.horizontal ? g.aisle_id_h(a.index) : g.aisle_id_v(a.index);
}

}  // namespace

int pass_residue(const GridLayout& layout, Cell cell, Dir d) {
    const Aisle& a = layout.aisle_of(cell, d);
    return (entry_phase_residue(layout, global_aisle_id(layout, a)) +
            dist_from_first(a, cell)) &
           3;
}

int vp_count_in_network(const GridLayout& layout, int64_t t) {
    int total = 0;
    for (size_t id = 0; id < layout.aisles.size(); ++id) {
        const Aisle& a = layout.aisles[id];
        int res = entry_phase_residue(layout, static_cast<int>(id));
        // The VP born at phase b (b ≡ res mod 4) sits at distance k at b + k;
        // in-network means k in [0, length-2], the exit cell not counted.
        for (int k = 0; k <= a.length - 2; ++k)
            if (((t - res - k) % 4 + 4) % 4 == 0) ++total;
    }
    return total;
}

namespace {

struct Builder {
    const GridLayout& g;
    int max_turns;
    std::vector<FeasiblePath>* out;
    int origin;
    const std::vector<int>& exit_station_of_aisle;

    std::vector<int32_t> trace;
    std::vector<PathSlot> reserved;
    int turns = 0;

    void emit(int dest_station) {
        FeasiblePath p;
        p.origin_station = static_cast<int16_t>(origin);
        p.dest_station = static_cast<int16_t>(dest_station);
        p.turn_count = static_cast<int8_t>(turns);
        p.total_phases = static_cast<int16_t>(trace.size());
        p.trace = trace;
        p.reserved = reserved;
        std::sort(p.reserved.begin(), p.reserved.end(),
                  [](const PathSlot& a, const PathSlot& b) {
                      return a.t != b.t ? a.t < b.t : a.cell < b.cell;
                  });
        p.reserved.erase(std::unique(p.reserved.begin(), p.reserved.end(),
                                     [](const PathSlot& a, const PathSlot& b) {
                                         return a.t == b.t && a.cell == b.cell;
                                     }),
                         p.reserved.end());
        int moves = 0;
        for (size_t i = 1; i < p.trace.size(); ++i)
            if (p.trace[i] != p.trace[i - 1]) ++moves;
        p.length_cells = static_cast<int16_t>(moves + 1);

        std::map<int, int16_t> passes;
        Cell adj[2];
        for (size_t i = 0; i < p.trace.size(); ++i) {
            Cell x{static_cast<int16_t>(p.trace[i] / g.cols),
                   static_cast<int16_t>(p.trace[i] % g.cols)};
            if (g.kind(x) != NodeKind::Unloading) continue;
            int n = g.outlets_beside(x, adj);
            for (int j = 0; j < n; ++j)
                passes.emplace(g.outlet_id(adj[j]), static_cast<int16_t>(i));
        }
        p.outlets.reserve(passes.size());
        for (auto& [k, t] : passes) p.outlets.push_back({k, t});
        out->push_back(std::move(p));
    }

    // Trace and reserve from `cell` (phase `t`) to the aisle exit, branching
    // into left turns along the way. The first `reserved_ahead` cells are
    // already covered by a turn block.
    void ride(Cell cell, Dir d, int t, int reserved_ahead) {
        const Aisle& a = g.aisle_of(cell, d);
        size_t tm = trace.size(), rm = reserved.size();
        Cell cur = cell;
        int tc = t;
        for (int i = 0;; ++i) {
            trace.push_back(g.cell_index(cur));
            if (i >= reserved_ahead)
                reserved.push_back({g.cell_index(cur), static_cast<int16_t>(tc)});
            if (g.kind(cur) == NodeKind::Conflict && turns < max_turns) {
                Dir nd = left_of(d);
                const Aisle& cross = g.aisle_of(cur, nd);
                if (cross.dir == nd && cells_remaining(cross, cur) >= 2)
                    branch_turn(cur, d, nd, tc);
            }
            if (cells_remaining(a, cur) == 0) break;
            cur = step(cur, d);
            ++tc;
        }
        emit(exit_station_of_aisle[global_aisle_id(g, a)]);
        trace.resize(tm);
        reserved.resize(rm);
    }

    // Turn at conflict cell X reached at phase t. The original VP keeps its
    // four phases from X onward, the joined VP its four phases from X; the
    // robot dwells at X until the joined VP passes (delta phases), then
    // catches it two cells on.
    void branch_turn(Cell x, Dir d_old, Dir d_new, int t) {
        size_t tm = trace.size(), rm = reserved.size();

        int delta = (pass_residue(g, x, d_new) - pass_residue(g, x, d_old)) & 3;
        if ((delta & 1) == 0)
            throw std::logic_error("crossing streams must interleave phases");

        for (int m = 1; m <= 3; ++m) {  // outgoing VP block (m=0 is the ride slot)
            Cell y = step(x, d_old, m);
            if (!g.in_grid(y)) break;
            reserved.push_back({g.cell_index(y), static_cast<int16_t>(t + m)});
        }
        for (int m = 0; m <= 3; ++m) {  // incoming VP block
            Cell y = step(x, d_new, m);
            if (!g.in_grid(y)) break;
            reserved.push_back(
                {g.cell_index(y), static_cast<int16_t>(t + delta + m)});
        }
        for (int k = 1; k <= delta; ++k)  // rotation dwell at X
            trace.push_back(g.cell_index(x));
        trace.push_back(g.cell_index(step(x, d_new)));  // catch-up cell

        ++turns;
        // Robot is aboard the joined VP two cells past X; that cell and the
        // next are inside the incoming block.
        ride(step(x, d_new, 2), d_new, t + delta + 2, /*reserved_ahead=*/2);
        --turns;

        trace.resize(tm);
        reserved.resize(rm);
    }
};

}  // namespace

bool FeasiblePath::passes_outlet(int outlet_id, int16_t* t_out) const {
    auto it = std::lower_bound(
        outlets.begin(), outlets.end(), outlet_id,
        [](const OutletPass& p, int k) { return p.outlet < k; });
    if (it == outlets.end() || it->outlet != outlet_id) return false;
    if (t_out) *t_out = it->t;
    return true;
}

PathFamily enumerate_feasible_paths(const GridLayout& layout, int max_turns) {
    if (max_turns < 0 || max_turns > 3)
        throw std::invalid_argument("turn budget must be in [0, 3]");
    PathFamily fam;
    fam.layout_ = &layout;
    fam.max_turns_ = max_turns;

    std::vector<int> exit_station(layout.aisles.size(), -1);
    for (const auto& s : layout.stations) exit_station[s.exit_aisle] = s.id;

    for (const auto& st : layout.stations) {
        Builder b{layout, max_turns, &fam.paths_, st.id, exit_station, {}, {}, 0};
        const Aisle& a = layout.aisles[st.entrance_aisle];
        b.ride(a.first, a.dir, 0, 0);
    }
    for (size_t i = 0; i < fam.paths_.size(); ++i) {
        fam.paths_[i].id = static_cast<int32_t>(i);
        fam.paths_[i].entry_residue = static_cast<int8_t>(entry_phase_residue(
            layout,
            layout.stations[fam.paths_[i].origin_station].entrance_aisle));
    }

    auto order = [&](int32_t lhs, int32_t rhs) {
        const FeasiblePath& a = fam.paths_[lhs];
        const FeasiblePath& b = fam.paths_[rhs];
        if (a.turn_count != b.turn_count) return a.turn_count < b.turn_count;
        if (a.length_cells != b.length_cells)
            return a.length_cells < b.length_cells;
        return a.trace < b.trace;
    };

    auto order_short = [&](int32_t lhs, int32_t rhs) {
        const FeasiblePath& a = fam.paths_[lhs];
        const FeasiblePath& b = fam.paths_[rhs];
        if (a.total_phases != b.total_phases)
            return a.total_phases < b.total_phases;
        if (a.turn_count != b.turn_count) return a.turn_count < b.turn_count;
        return a.trace < b.trace;
    };

    int ns = static_cast<int>(layout.stations.size());
    int no = layout.outlet_count();
    fam.index_.assign(ns, std::vector<std::vector<int32_t>>(no));
    fam.by_station_.assign(ns, {});
    for (const auto& p : fam.paths_) {
        fam.by_station_[p.origin_station].push_back(p.id);
        for (const auto& pass : p.outlets)
            fam.index_[p.origin_station][pass.outlet].push_back(p.id);
    }
    fam.index_short_ = fam.index_;
    for (int s = 0; s < ns; ++s) {
        std::sort(fam.by_station_[s].begin(), fam.by_station_[s].end(), order);
        for (int k = 0; k < no; ++k) {
            std::sort(fam.index_[s][k].begin(), fam.index_[s][k].end(), order);
            std::sort(fam.index_short_[s][k].begin(),
                      fam.index_short_[s][k].end(), order_short);
        }
    }
    return fam;
}

}  // namespace rss
