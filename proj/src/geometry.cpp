#include "rss/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace rss {

const char* dir_name(Dir d) {
    switch (d) {
        case Dir::East: return "E";
        case Dir::South: return "S";
        case Dir::West: return "W";
        case Dir::North: return "N";
    }
    return "?";
}

const char* side_name(Side s) {
    switch (s) {
        case Side::Top: return "top";
        case Side::Bottom: return "bottom";
        case Side::Left: return "left";
        case Side::Right: return "right";
    }
    return "?";
}

NodeKind GridLayout::kind(Cell x) const {
    if (!in_grid(x)) {
        for (const auto& s : stations) {
            if (s.entrance_cell == x) return NodeKind::Entrance;
            if (s.exit_cell == x) return NodeKind::Exit;
        }
        throw std::out_of_range("cell outside layout");
    }
    const bool re = x.r % 2 == 0, ce = x.c % 2 == 0;
    if (re && ce) return NodeKind::Conflict;
    if (!re && !ce) return NodeKind::Outlet;
    return NodeKind::Unloading;
}

int GridLayout::out_neighbors(Cell x, Cell out[2]) const {
    int n = 0;
    if (x.r % 2 == 0) {
        Cell y = step(x, h_dir(x.r / 2));
        if (in_grid(y)) out[n++] = y;
    }
    if (x.c % 2 == 0) {
        Cell y = step(x, v_dir(x.c / 2));
        if (in_grid(y)) out[n++] = y;
    }
    return n;
}

int GridLayout::outlets_beside(Cell u, Cell out[2]) const {
    int n = 0;
    if (kind(u) != NodeKind::Unloading) return 0;
    if (u.r % 2 == 0) {  // horizontal-aisle cell: outlets above/below
        for (int d : {-1, 1}) {
            Cell y{static_cast<int16_t>(u.r + d), u.c};
            if (is_outlet(y)) out[n++] = y;
        }
    } else {  // vertical-aisle cell: outlets left/right
        for (int d : {-1, 1}) {
            Cell y{u.r, static_cast<int16_t>(u.c + d)};
            if (is_outlet(y)) out[n++] = y;
        }
    }
    return n;
}

const Aisle& GridLayout::aisle_of(Cell x, Dir d) const {
    if (dr(d) == 0) return aisles[aisle_id_h(x.r / 2)];
    return aisles[aisle_id_v(x.c / 2)];
}

std::vector<int> GridLayout::active_station_ids() const {
    std::vector<int> ids;
    for (const auto& s : stations)
        if (s.active) ids.push_back(s.id);
    return ids;
}

int GridLayout::station_count_active() const {
    return static_cast<int>(active_station_ids().size());
}

namespace {

// Largest-remainder apportionment of `total` stations over the four sides,
// proportional to each side's slot capacity.
std::array<int, 4> apportion(int total, const std::array<int, 4>& cap) {
    int cap_sum = cap[0] + cap[1] + cap[2] + cap[3];
    std::array<int, 4> out{};
    std::array<double, 4> frac{};
    int assigned = 0;
    for (int s = 0; s < 4; ++s) {
        double share = static_cast<double>(total) * cap[s] / cap_sum;
        out[s] = static_cast<int>(share);
        frac[s] = share - out[s];
        assigned += out[s];
    }
    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return frac[a] > frac[b]; });
    for (int idx = 0; assigned < total; idx = (idx + 1) % 4) {
        int s = order[idx];
        if (out[s] < cap[s]) {
            ++out[s];
            ++assigned;
        }
    }
    return out;
}

}  // namespace

void set_active_stations(GridLayout& layout, int n_stations) {
    if (n_stations < 1 || n_stations > layout.n_h + layout.n_v)
        throw std::invalid_argument("station count must be in [1, n_h + n_v]");
    const std::array<int, 4> cap{layout.n_v / 2, layout.n_v / 2, layout.n_h / 2,
                                 layout.n_h / 2};
    const auto alloc = apportion(n_stations, cap);
    for (auto& s : layout.stations) {
        int side = static_cast<int>(s.side);
        int start = (cap[side] - alloc[side]) / 2;  // centered block
        s.active = s.index_along_side >= start &&
                   s.index_along_side < start + alloc[side];
    }
}

GridLayout build_layout(int n_h, int n_v, double cell_len, int n_stations) {
    if (n_h < 4 || n_v < 4 || n_h % 2 != 0 || n_v % 2 != 0)
        throw std::invalid_argument("aisle counts must be even and >= 4");
    if (cell_len <= 0) throw std::invalid_argument("cell length must be positive");

    GridLayout g;
    g.n_h = n_h;
    g.n_v = n_v;
    g.cell_len = cell_len;
    g.rows = 2 * n_h - 1;
    g.cols = 2 * n_v - 1;

    for (int i = 0; i < n_h; ++i) {
        Aisle a;
        a.horizontal = true;
        a.index = i;
        a.dir = g.h_dir(i);
        a.length = g.cols;
        int16_t row = static_cast<int16_t>(2 * i);
        if (a.dir == Dir::East) {
            a.first = Cell{row, 0};
            a.last = Cell{row, static_cast<int16_t>(g.cols - 1)};
        } else {
            a.first = Cell{row, static_cast<int16_t>(g.cols - 1)};
            a.last = Cell{row, 0};
        }
        g.aisles.push_back(a);
    }
    for (int j = 0; j < n_v; ++j) {
        Aisle a;
        a.horizontal = false;
        a.index = j;
        a.dir = g.v_dir(j);
        a.length = g.rows;
        int16_t col = static_cast<int16_t>(2 * j);
        if (a.dir == Dir::South) {
            a.first = Cell{0, col};
            a.last = Cell{static_cast<int16_t>(g.rows - 1), col};
        } else {
            a.first = Cell{static_cast<int16_t>(g.rows - 1), col};
            a.last = Cell{0, col};
        }
        g.aisles.push_back(a);
    }

    // Station slots pair adjacent anti-parallel aisles. On the top side,
    // slot q couples the entrance of southbound aisle 2q with the exit of
    // northbound aisle 2q+1; the other sides mirror this.
    auto outside = [&](Cell x, Dir toward_outside) { return step(x, toward_outside); };
    int id = 0;
    for (int q = 0; q < n_v / 2; ++q) {  // top
        StationSite s;
        s.id = id++;
        s.side = Side::Top;
        s.index_along_side = q;
        s.entrance_aisle = g.aisle_id_v(2 * q);
        s.exit_aisle = g.aisle_id_v(2 * q + 1);
        s.entrance_cell = outside(g.aisles[s.entrance_aisle].first, Dir::North);
        s.exit_cell = outside(g.aisles[s.exit_aisle].last, Dir::North);
        g.stations.push_back(s);
    }
    for (int q = 0; q < n_v / 2; ++q) {  // bottom
        StationSite s;
        s.id = id++;
        s.side = Side::Bottom;
        s.index_along_side = q;
        s.entrance_aisle = g.aisle_id_v(2 * q + 1);
        s.exit_aisle = g.aisle_id_v(2 * q);
        s.entrance_cell = outside(g.aisles[s.entrance_aisle].first, Dir::South);
        s.exit_cell = outside(g.aisles[s.exit_aisle].last, Dir::South);
        g.stations.push_back(s);
    }
    for (int p = 0; p < n_h / 2; ++p) {  // left
        StationSite s;
        s.id = id++;
        s.side = Side::Left;
        s.index_along_side = p;
        s.entrance_aisle = g.aisle_id_h(2 * p + 1);
        s.exit_aisle = g.aisle_id_h(2 * p);
        s.entrance_cell = outside(g.aisles[s.entrance_aisle].first, Dir::West);
        s.exit_cell = outside(g.aisles[s.exit_aisle].last, Dir::West);
        g.stations.push_back(s);
    }
    for (int p = 0; p < n_h / 2; ++p) {  // right
        StationSite s;
        s.id = id++;
        s.side = Side::Right;
        s.index_along_side = p;
        s.entrance_aisle = g.aisle_id_h(2 * p);
        s.exit_aisle = g.aisle_id_h(2 * p + 1);
        s.entrance_cell = outside(g.aisles[s.entrance_aisle].first, Dir::East);
        s.exit_cell = outside(g.aisles[s.exit_aisle].last, Dir::East);
        g.stations.push_back(s);
    }

    set_active_stations(g, n_stations);
    return g;
}

std::vector<std::vector<int>> classify_reachability(const GridLayout& layout,
                                                    int max_turns) {
    std::vector<std::vector<int>> reach(layout.outlet_count());
    const int cells = layout.cell_count();
    // state: cell * 4 dirs * (max_turns+1)
    for (const auto& st : layout.stations) {
        std::vector<char> seen(static_cast<size_t>(cells) * 4 * (max_turns + 1), 0);
        std::vector<char> outlet_hit(layout.outlet_count(), 0);
        const Aisle& a0 = layout.aisles[st.entrance_aisle];
        struct State {
            Cell cell;
            Dir dir;
            int turns;
        };
        std::deque<State> q;
        q.push_back({a0.first, a0.dir, 0});
        auto key = [&](Cell x, Dir d, int t) {
            return (static_cast<size_t>(layout.cell_index(x)) * 4 +
                    static_cast<size_t>(d)) *
                       (max_turns + 1) +
                   t;
        };
        seen[key(a0.first, a0.dir, 0)] = 1;
        while (!q.empty()) {
            State s = q.front();
            q.pop_front();
            if (layout.kind(s.cell) == NodeKind::Unloading) {
                Cell adj[2];
                int n = layout.outlets_beside(s.cell, adj);
                for (int i = 0; i < n; ++i)
                    outlet_hit[layout.outlet_id(adj[i])] = 1;
            }
            // continue straight
            Cell fwd = step(s.cell, s.dir);
            if (layout.in_grid(fwd) && !seen[key(fwd, s.dir, s.turns)]) {
                seen[key(fwd, s.dir, s.turns)] = 1;
                q.push_back({fwd, s.dir, s.turns});
            }
            // left turn at a conflict cell onto the crossing aisle
            if (s.turns < max_turns && layout.kind(s.cell) == NodeKind::Conflict) {
                Dir nd = left_of(s.dir);
                const Aisle& cross = layout.aisle_of(s.cell, nd);
                Cell nxt = step(s.cell, nd);
                if (cross.dir == nd && layout.in_grid(nxt) &&
                    !seen[key(nxt, nd, s.turns + 1)]) {
                    seen[key(nxt, nd, s.turns + 1)] = 1;
                    q.push_back({nxt, nd, s.turns + 1});
                }
            }
        }
        for (int k = 0; k < layout.outlet_count(); ++k)
            if (outlet_hit[k]) reach[k].push_back(st.id);
    }
    return reach;
}

std::string serialize_layout(const GridLayout& g) {
    std::ostringstream os;
    char buf[128];
    std::snprintf(buf, sizeof buf, "rss-layout v1\ndims %d %d cell %.9g\n", g.n_h,
                  g.n_v, g.cell_len);
    os << buf;
    os << "stations " << g.stations.size() << "\n";
    for (const auto& s : g.stations) {
        std::snprintf(buf, sizeof buf,
                      "station %d %s %d entrance %d %d exit %d %d active %d\n",
                      s.id, side_name(s.side), s.index_along_side,
                      s.entrance_cell.r, s.entrance_cell.c, s.exit_cell.r,
                      s.exit_cell.c, s.active ? 1 : 0);
        os << buf;
    }
    os << "cells " << g.rows << " " << g.cols << "\n";
    for (int r = 0; r < g.rows; ++r) {
        std::string line;
        for (int c = 0; c < g.cols; ++c) {
            Cell x{static_cast<int16_t>(r), static_cast<int16_t>(c)};
            switch (g.kind(x)) {
                case NodeKind::Conflict: line += '+'; break;
                case NodeKind::Unloading: line += (r % 2 == 0 ? '-' : '|'); break;
                case NodeKind::Outlet: line += 'O'; break;
                default: line += '?';
            }
        }
        os << line << "\n";
    }
    return os.str();
}

GridLayout parse_layout(const std::string& text) {
    std::istringstream is(text);
    std::string tag, word;
    is >> tag >> word;
    if (tag != "rss-layout" || word != "v1")
        throw std::invalid_argument("not an rss-layout v1 document");
    int n_h, n_v;
    double cell;
    is >> tag >> n_h >> n_v >> word >> cell;
    size_t n_st;
    is >> tag >> n_st;
    // Placement is deterministic, so rebuilding from dims and re-marking the
    // active set reproduces the serialized object; the station lines are
    // verified against the rebuild.
    GridLayout g = build_layout(n_h, n_v, cell, n_h + n_v);
    std::vector<char> active(n_st, 0);
    for (size_t i = 0; i < n_st; ++i) {
        std::string side;
        int id, slot, er, ec, xr, xc, act;
        is >> tag >> id >> side >> slot >> word >> er >> ec >> word >> xr >> xc >>
            word >> act;
        if (tag != "station" || id != static_cast<int>(i))
            throw std::invalid_argument("bad station record");
        if (g.stations[i].entrance_cell != Cell{static_cast<int16_t>(er),
                                                static_cast<int16_t>(ec)} ||
            g.stations[i].exit_cell !=
                Cell{static_cast<int16_t>(xr), static_cast<int16_t>(xc)})
            throw std::invalid_argument("station geometry mismatch");
        active[i] = static_cast<char>(act);
    }
    for (size_t i = 0; i < n_st; ++i) g.stations[i].active = active[i] != 0;
    return g;
}

}  // namespace rss
