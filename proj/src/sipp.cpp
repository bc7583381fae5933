#include "rss/sipp.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace rss {

void ObstacleTimeline::insert(int32_t cell, int64_t lo, int64_t hi) {
    auto& v = blocked_[cell];
    auto it = std::lower_bound(
        v.begin(), v.end(), lo,
        [](const std::pair<int64_t, int64_t>& a, int64_t x) { return a.first < x; });
    it = v.insert(it, {lo, hi});
    size_t i = it - v.begin();
    if (i > 0 && v[i - 1].second >= v[i].first) {
        v[i - 1].second = std::max(v[i - 1].second, v[i].second);
        v.erase(v.begin() + i);
        --i;
    }
    while (i + 1 < v.size() && v[i].second >= v[i + 1].first) {
        v[i].second = std::max(v[i].second, v[i + 1].second);
        v.erase(v.begin() + i + 1);
    }
}

void ObstacleTimeline::forget_before(int64_t t) {
    for (auto& v : blocked_) {
        size_t keep = 0;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i].second > t) v[keep++] = v[i];
        v.resize(keep);
    }
}

bool ObstacleTimeline::is_blocked(int32_t cell, int64_t t) const {
    const auto& v = blocked_[cell];
    auto it = std::upper_bound(
        v.begin(), v.end(), t,
        [](int64_t x, const std::pair<int64_t, int64_t>& a) { return x < a.first; });
    if (it == v.begin()) return false;
    --it;
    return t < it->second;
}

std::vector<SippInterval> ObstacleTimeline::safe_intervals(int32_t cell,
                                                           int64_t from,
                                                           int64_t horizon) const {
    std::vector<SippInterval> out;
    int64_t cursor = from;
    for (const auto& [lo, hi] : blocked_[cell]) {
        if (hi <= cursor) continue;
        if (lo >= horizon) break;
        if (lo > cursor) out.push_back({cursor, lo});
        cursor = std::max(cursor, hi);
    }
    if (cursor < horizon) out.push_back({cursor, horizon});
    return out;
}

namespace {

constexpr int32_t kUnreachable = -1;

struct Move {
    int32_t state = -1;  // cell * 2 + axis
    int32_t cost = 0;
};

}  // namespace

// Successor movement states of (cell, axis): straight along the aisle, and a
// crossing move at conflict cells (direction-change rules applied).
static int successors(const GridLayout& g, const SippOptions& opt, int32_t cell,
                      int axis, Move out[2]) {
    Cell x{static_cast<int16_t>(cell / g.cols),
           static_cast<int16_t>(cell % g.cols)};
    int n = 0;
    Dir d = axis == 0 ? g.h_dir(x.r / 2) : g.v_dir(x.c / 2);
    Cell fwd = step(x, d);
    if (g.in_grid(fwd))
        out[n++] = {g.cell_index(fwd) * 2 + axis, 1};
    if (g.kind(x) == NodeKind::Conflict) {
        Dir nd = axis == 0 ? g.v_dir(x.c / 2) : g.h_dir(x.r / 2);
        if (!opt.left_turns_only || nd == left_of(d)) {
            Cell turn = step(x, nd);
            if (g.in_grid(turn))
                out[n++] = {g.cell_index(turn) * 2 + (1 - axis),
                            1 + opt.turn_pause_phases};
        }
    }
    return n;
}

const std::vector<int32_t>& SippPlanner::dist_to(const SippGoal& goal) const {
    int64_t key =
        static_cast<int64_t>(g_->cell_index(goal.cell)) * 2 + axis_of(goal.heading);
    auto it = dist_cache_.find(key);
    if (it != dist_cache_.end()) return it->second;

    int n_states = g_->cell_count() * 2;
    std::vector<int32_t> dist(n_states, kUnreachable);
    // backward Dijkstra over reversed edges
    std::vector<std::vector<Move>> rev(n_states);
    Move fwd[2];
    for (int r = 0; r < g_->rows; ++r)
        for (int c = 0; c < g_->cols; ++c) {
            Cell x{(int16_t)r, (int16_t)c};
            if (!g_->is_aisle_cell(x)) continue;
            for (int axis = 0; axis < 2; ++axis) {
                if (g_->kind(x) != NodeKind::Conflict &&
                    ((axis == 0 && x.r % 2 != 0) || (axis == 1 && x.c % 2 != 0)))
                    continue;  // not a movement state on this axis
                int32_t s = g_->cell_index(x) * 2 + axis;
                int n = successors(*g_, opt_, g_->cell_index(x), axis, fwd);
                for (int i = 0; i < n; ++i) rev[fwd[i].state].push_back({s, fwd[i].cost});
            }
        }
    using QN = std::pair<int32_t, int32_t>;
    std::priority_queue<QN, std::vector<QN>, std::greater<QN>> pq;
    dist[key] = 0;
    pq.push({0, static_cast<int32_t>(key)});
    while (!pq.empty()) {
        auto [dd, s] = pq.top();
        pq.pop();
        if (dd > dist[s]) continue;
        for (const Move& m : rev[s])
            if (dist[m.state] < 0 || dist[m.state] > dd + m.cost) {
                dist[m.state] = dd + m.cost;
                pq.push({dd + m.cost, m.state});
            }
    }
    return dist_cache_.emplace(key, std::move(dist)).first->second;
}

namespace {

struct Node {
    int64_t f;
    int64_t g;
    int32_t state;     // cell * 2 + axis
    int32_t interval;  // index into the per-state interval list
    friend bool operator>(const Node& a, const Node& b) {
        return a.f != b.f ? a.f > b.f : a.g > b.g;
    }
};

}  // namespace

std::optional<TimedPath> SippPlanner::plan(const ObstacleTimeline& obstacles,
                                           Cell start, Dir start_heading,
                                           int64_t start_earliest,
                                           const std::vector<SippGoal>& goals,
                                           int64_t horizon,
                                           bool can_delay_start) const {
    if (goals.empty()) return std::nullopt;
    std::vector<const std::vector<int32_t>*> h_tabs;
    for (const auto& gl : goals) h_tabs.push_back(&dist_to(gl));
    auto heur = [&](int32_t state) {
        int32_t best = std::numeric_limits<int32_t>::max();
        for (const auto* t : h_tabs)
            if ((*t)[state] >= 0) best = std::min(best, (*t)[state]);
        return best;
    };
    std::vector<char> goal_state(g_->cell_count() * 2, 0);
    for (const auto& gl : goals)
        goal_state[g_->cell_index(gl.cell) * 2 + axis_of(gl.heading)] = 1;

    // lazily materialized safe intervals per cell (shared across axes)
    std::unordered_map<int32_t, std::vector<SippInterval>> intervals;
    auto cell_intervals = [&](int32_t cell) -> const std::vector<SippInterval>& {
        auto it = intervals.find(cell);
        if (it == intervals.end())
            it = intervals
                     .emplace(cell, obstacles.safe_intervals(cell, start_earliest,
                                                             horizon))
                     .first;
        return it->second;
    };

    struct Label {
        int64_t arrive = -1;
        int32_t p_state = -1, p_interval = -1;
    };
    std::unordered_map<int64_t, Label> labels;
    auto lkey = [](int32_t state, int32_t iv) {
        return (static_cast<int64_t>(state) << 32) | static_cast<uint32_t>(iv);
    };

    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;
    int32_t s_state = g_->cell_index(start) * 2 + axis_of(start_heading);
    {
        const auto& sv = cell_intervals(g_->cell_index(start));
        int32_t h0 = heur(s_state);
        for (size_t i = 0; i < sv.size() && h0 != std::numeric_limits<int32_t>::max();
             ++i) {
            int64_t arrive = std::max(start_earliest, sv[i].t_lo);
            if (arrive >= sv[i].t_hi || arrive >= horizon) continue;
            if (!can_delay_start) {
                if (sv[i].t_lo > start_earliest) break;
                if (arrive != start_earliest) continue;
            }
            labels[lkey(s_state, (int32_t)i)] = {arrive, -1, -1};
            open.push({arrive + h0, arrive, s_state, (int32_t)i});
            if (!can_delay_start) break;
        }
    }

    Move succ[2];
    while (!open.empty()) {
        Node cur = open.top();
        open.pop();
        Label& cl = labels[lkey(cur.state, cur.interval)];
        if (cur.g > cl.arrive) continue;  // stale
        if (goal_state[cur.state]) {
            std::vector<std::pair<int64_t, int32_t>> rev;  // (arrive, cell)
            int32_t st = cur.state, iv = cur.interval;
            while (st >= 0) {
                const Label& l = labels[lkey(st, iv)];
                rev.push_back({l.arrive, st / 2});
                int32_t ps = l.p_state, pi = l.p_interval;
                st = ps;
                iv = pi;
            }
            std::reverse(rev.begin(), rev.end());
            TimedPath out;
            out.start = rev.front().first;
            for (size_t i = 0; i < rev.size(); ++i) {
                if (i > 0)
                    for (int64_t w = rev[i - 1].first + 1; w < rev[i].first; ++w)
                        out.cells.push_back(rev[i - 1].second);
                out.cells.push_back(rev[i].second);
            }
            return out;
        }
        int32_t cell = cur.state / 2;
        const auto& civ = cell_intervals(cell);
        int64_t stay_until = std::min(civ[cur.interval].t_hi, horizon);
        int n = successors(*g_, opt_, cell, cur.state % 2, succ);
        for (int i = 0; i < n; ++i) {
            int32_t h = heur(succ[i].state);
            if (h == std::numeric_limits<int32_t>::max()) continue;
            int32_t ncell = succ[i].state / 2;
            const auto& niv = cell_intervals(ncell);
            int64_t min_arrive = cur.g + succ[i].cost;
            for (size_t j = 0; j < niv.size(); ++j) {
                int64_t a = std::max(min_arrive, niv[j].t_lo);
                // the robot waits at the current cell until a-1
                if (a - 1 >= stay_until) break;
                if (a >= niv[j].t_hi || a >= horizon) continue;
                int64_t k = lkey(succ[i].state, (int32_t)j);
                auto it = labels.find(k);
                if (it != labels.end() && it->second.arrive <= a) continue;
                labels[k] = {a, cur.state, cur.interval};
                open.push({a + h, a, succ[i].state, (int32_t)j});
            }
        }
    }
    return std::nullopt;
}

}  // namespace rss
