#include "rss/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <random>
#include <sstream>
#include <unordered_map>
#include <stdexcept>

#include "rss/rcs.hpp"
#include "rss/reservation.hpp"
#include "rss/sipp.hpp"

namespace rss {

uint64_t split_seed(uint64_t master, uint64_t stream) {
    uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void SimConfig::validate() const {
    if (n_robots < 1) throw std::invalid_argument("need at least one robot");
    if (!(measure_s > 0)) throw std::invalid_argument("measure window must be positive");
    if (!(rcs.tau_e > 0)) throw std::invalid_argument("tau_e must be positive");
    double k = rcs.tau_c / (4.0 * rcs.tau_e);
    if (std::fabs(k - std::round(k)) > 1e-9 || k < 1.0 - 1e-9)
        throw std::invalid_argument("tau_c must be a positive multiple of 4*tau_e");
}

namespace {

struct Robot {
    enum class St { Queued, Dispatched, InNet, Exited };
    St st = St::Queued;
    int16_t station = -1;  // queue home while Queued
    int32_t outlet = -1;
    int64_t load_phase = -1;
    int64_t join_phase = 0;
    int64_t seq = 0;  // FIFO order within the queue
    double waiting_s = 0;

    const std::vector<int32_t>* script = nullptr;  // borrowed (RC-S trace)
    std::vector<int32_t> plan;                     // owned (CA*)
    int64_t script_start = -1;
    int32_t drop_idx = -1;
    int16_t dest = -1;
    int32_t moves = 0;
    bool counted = false;  // drop fell inside the measure window
};

class ConflictScanner {
  public:
    ConflictScanner(int cells, int robots)
        : occ_prev_(cells, -1),
          occ_cur_(cells, -1),
          pos_prev_(robots, -1),
          pos_cur_(robots, -1),
          in_prev_(robots, 0),
          in_cur_(robots, 0),
          walk_state_(robots, 0) {}

    void begin_phase() {
        for (int32_t c : dirty_cur_) occ_cur_[c] = -1;
        dirty_cur_.clear();
        for (int32_t r : robots_cur_) {
            in_cur_[r] = 0;
            pos_cur_[r] = -1;
        }
        robots_cur_.clear();
    }

    void feed(int32_t robot, int32_t cell, ConflictCounts& out) {
        if (occ_cur_[cell] >= 0)
            ++out.vertex;
        else {
            occ_cur_[cell] = robot;
            dirty_cur_.push_back(cell);
        }
        pos_cur_[robot] = cell;
        in_cur_[robot] = 1;
        robots_cur_.push_back(robot);
    }

    void end_phase(ConflictCounts& out) {
        // Following means entering the cell its previous occupant left with
        // the same heading (rear-end geometry). Crossing streams that thread
        // an intersection one phase apart move on different axes and are the
        // designed interleave, not a conflict.
        for (int32_t r : robots_cur_) {
            int32_t cell = pos_cur_[r];
            int32_t p0 = occ_prev_[cell];
            if (p0 < 0 || p0 == r) continue;
            int32_t r_prev = in_prev_[r] ? pos_prev_[r] : -1;
            if (r_prev < 0 || r_prev == cell) continue;
            if (!in_cur_[p0]) continue;  // previous occupant exited the grid
            int32_t a_cur = pos_cur_[p0];
            if (a_cur == cell) continue;  // p0 stayed: that is a vertex case
            if (a_cur == r_prev) {
                if (r < p0) ++out.swapping;
                continue;
            }
            if (cell - r_prev == a_cur - cell) ++out.following;
        }
        // Rotations of three or more robots simultaneously advancing into
        // each other's cells (two-robot exchanges were counted as swaps).
        ++walk_epoch_;
        for (int32_t r : robots_cur_) {
            if (walk_mark(r) || !moved(r)) continue;
            std::vector<int32_t> chain;
            int32_t x = r;
            while (x >= 0 && !walk_mark(x) && moved(x)) {
                set_walk_mark(x);
                chain.push_back(x);
                int32_t nxt = occ_prev_[pos_cur_[x]];
                if (nxt < 0 || !in_cur_[nxt]) break;
                if (!chain.empty() && nxt == chain.front() && chain.size() >= 3) {
                    ++out.cycle;
                    break;
                }
                x = nxt;
            }
        }
        // roll current into previous
        for (int32_t c : dirty_prev_) occ_prev_[c] = -1;
        for (int32_t r : robots_prev_) {
            in_prev_[r] = 0;
            pos_prev_[r] = -1;
        }
        for (int32_t c : dirty_cur_) occ_prev_[c] = occ_cur_[c];
        for (int32_t r : robots_cur_) {
            in_prev_[r] = 1;
            pos_prev_[r] = pos_cur_[r];
        }
        dirty_prev_ = dirty_cur_;
        robots_prev_ = robots_cur_;
    }

  private:
    bool moved(int32_t r) const {
        return in_prev_[r] && pos_prev_[r] >= 0 && pos_prev_[r] != pos_cur_[r];
    }
    bool walk_mark(int32_t r) const { return walk_state_[r] == walk_epoch_; }
    void set_walk_mark(int32_t r) { walk_state_[r] = walk_epoch_; }

    std::vector<int32_t> occ_prev_, occ_cur_;
    std::vector<int32_t> pos_prev_, pos_cur_;
    std::vector<char> in_prev_, in_cur_;
    std::vector<int64_t> walk_state_;
    int64_t walk_epoch_ = 0;
    std::vector<int32_t> dirty_prev_, dirty_cur_, robots_prev_, robots_cur_;
};

struct Engine {
    const SimConfig& cfg;
    const GridLayout& g;
    const PathFamily& fam;

    int64_t warm_phases, measure_phases, total_phases;
    int cycles_per_dispatch;  // tau_c in lattice cycles

    std::vector<Robot> robots;
    std::vector<std::deque<int32_t>> queue;  // per station
    std::vector<std::mt19937_64> task_rng;
    std::vector<std::vector<int32_t>> servable;
    std::vector<char> active;
    std::vector<int32_t> balance;  // robots homed at / heading to station
    std::vector<int64_t> last_dispatch_cycle;
    std::vector<int64_t> last_entry_cycle;
    std::vector<int32_t> in_net;

    ReservationTable table;
    SippPlanner sipp;
    ObstacleTimeline obstacles;
    int64_t seq_counter = 0;

    SimMetrics m;
    double service_sum = 0, lead_sum = 0, full_sum = 0, dist_sum = 0;
    int64_t full_count = 0;
    int64_t innet_samples = 0;
    double decision_seconds = 0;
    ConflictScanner scanner;

    Engine(const SimConfig& c, const GridLayout& gl, const PathFamily& fm)
        : cfg(c),
          g(gl),
          fam(fm),
          table(gl, c.window_cycles),
          sipp(gl, c.castar_sipp),
          obstacles(gl.cell_count()),
          scanner(gl.cell_count(), c.n_robots) {
        warm_phases = llround(cfg.warmup_s / cfg.rcs.tau_e);
        measure_phases = llround(cfg.measure_s / cfg.rcs.tau_e);
        total_phases = warm_phases + measure_phases;
        cycles_per_dispatch =
            (int)llround(cfg.rcs.tau_c / (4.0 * cfg.rcs.tau_e));
        double load_period =
            cfg.station_load_period_s > 0 ? cfg.station_load_period_s : cfg.rcs.tau_c;
        cycles_per_dispatch = std::max(
            cycles_per_dispatch,
            (int)std::ceil(load_period / (4.0 * cfg.rcs.tau_e) - 1e-9));

        active.assign(g.stations.size(), 0);
        for (const auto& s : g.stations) active[s.id] = s.active ? 1 : 0;
        queue.assign(g.stations.size(), {});
        balance.assign(g.stations.size(), 0);
        last_dispatch_cycle.assign(g.stations.size(), -1000000);
        last_entry_cycle.assign(g.stations.size(), -1000000);
        for (size_t s = 0; s < g.stations.size(); ++s)
            task_rng.emplace_back(split_seed(cfg.seed, 1000 + s));

        auto act = g.active_station_ids();
        if (act.empty()) throw std::invalid_argument("no active stations");
        // outlets a station can actually serve: some station-outlet pairs
        // reach no active destination within the turn budget, and a real
        // dispatcher never hands those parcels to that station
        servable.assign(g.stations.size(), {});
        for (int sid : act) {
            for (int k = 0; k < g.outlet_count(); ++k)
                for (int32_t pid : fam.from_station_via(sid, k))
                    if (active[fam.path(pid).dest_station]) {
                        servable[sid].push_back(k);
                        break;
                    }
            if (servable[sid].empty())
                throw std::invalid_argument(
                    "station cannot serve any outlet with this active set");
        }
        robots.resize(cfg.n_robots);
        for (int r = 0; r < cfg.n_robots; ++r) {
            int16_t s = (int16_t)act[r % act.size()];
            robots[r].station = s;
            robots[r].seq = seq_counter++;
            queue[s].push_back(r);
            ++balance[s];
        }
        m.segment_flow.assign((size_t)g.cell_count() * 4, 0);
    }

    int32_t draw_outlet(int station) {
        const auto& pool = servable[station];
        return pool[task_rng[station]() % pool.size()];
    }

    bool in_window(int64_t t) const {
        return t >= warm_phases && t < total_phases;
    }

    void bind_task(int32_t rid, int64_t t) {
        Robot& r = robots[rid];
        if (r.outlet < 0) {
            r.outlet = draw_outlet(r.station);
            r.load_phase = t;
            r.waiting_s = 0;
        }
    }

    // ---- RC-S -----------------------------------------------------------

    void rcs_cycle(int64_t e) {
        table.release_expired(e);
        std::vector<RcsCandidate> cands;
        std::vector<int32_t> cand_robot;
        int64_t t = 4 * e;
        for (size_t s = 0; s < queue.size(); ++s) {
            if (!active[s] || queue[s].empty()) continue;
            if (e - last_dispatch_cycle[s] < cycles_per_dispatch) continue;
            int32_t rid = queue[s].front();
            if (robots[rid].join_phase > t) continue;
            bind_task(rid, t);
            cands.push_back({rid, (int16_t)s, robots[rid].outlet,
                             robots[rid].waiting_s});
            cand_robot.push_back(rid);
        }
        for (int idx : rcs_candidate_order(cands)) {
            int32_t rid = cands[idx].robot;
            Robot& r = robots[rid];
            auto pick = choose_rcs_assignment(fam, table, active, balance,
                                              r.station, r.outlet, e,
                                              cfg.horizon_cycles,
                                              cfg.rcs_tie_break,
                                              cfg.rcs_wait_weight);
            if (!pick) {
                r.waiting_s += cfg.rcs.tau_c;
                continue;
            }
            const FeasiblePath& p = fam.path(pick->path_id);
            table.reserve(p, pick->entry_cycle, rid);
            if (last_entry_cycle[r.station] == pick->entry_cycle)
                ++m.admission_violations;
            last_entry_cycle[r.station] = pick->entry_cycle;
            last_dispatch_cycle[r.station] = e;
            queue[r.station].pop_front();
            --balance[r.station];
            ++balance[p.dest_station];
            r.st = Robot::St::Dispatched;
            r.script = &p.trace;
            r.script_start = 4 * pick->entry_cycle + p.entry_residue;
            int16_t drop_t = 0;
            p.passes_outlet(r.outlet, &drop_t);
            r.drop_idx = drop_t;
            r.dest = p.dest_station;
            r.moves = p.length_cells - 1;
        }
    }

    // ---- CA* ------------------------------------------------------------

    std::vector<SippGoal> drop_goals(int outlet) const {
        Cell o = g.outlet_cell(outlet);
        std::vector<SippGoal> out;
        for (auto [dr, dc] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
            Cell u{(int16_t)(o.r + dr), (int16_t)(o.c + dc)};
            if (!g.in_grid(u) || g.kind(u) != NodeKind::Unloading) continue;
            Dir d = u.r % 2 == 0 ? g.h_dir(u.r / 2) : g.v_dir(u.c / 2);
            out.push_back({u, d});
        }
        return out;
    }

    Dir cell_axis_dir(Cell u) const {
        return u.r % 2 == 0 && u.c % 2 == 1 ? g.h_dir(u.r / 2)
               : u.c % 2 == 0 && u.r % 2 == 1
                   ? g.v_dir(u.c / 2)
                   : g.h_dir(u.r / 2);  // conflict cells default horizontal
    }

    int16_t pick_return_station(Cell from, Dir from_dir, int origin) const {
        int from_state = g.cell_index(from) * 2 + SippPlanner::axis_of(from_dir);
        if (cfg.castar_return == ReturnPolicy::Origin && active[origin]) {
            const Aisle& ea = g.aisles[g.stations[origin].exit_aisle];
            if (sipp.dist_to({ea.last, ea.dir})[from_state] >= 0)
                return (int16_t)origin;
        }
        int16_t best = -1;
        int64_t best_key = 0;
        for (const auto& st : g.stations) {
            if (!active[st.id]) continue;
            const Aisle& ea = g.aisles[st.exit_aisle];
            int32_t d = sipp.dist_to({ea.last, ea.dir})[from_state];
            if (d < 0) continue;
            int64_t key;
            if (cfg.castar_return == ReturnPolicy::NearestExit)
                key = ((int64_t)d << 16) | st.id;
            else
                key = ((int64_t)balance[st.id] << 32) | ((int64_t)d << 16) |
                      st.id;
            if (best < 0 || key < best_key) {
                best = (int16_t)st.id;
                best_key = key;
            }
        }
        (void)origin;
        return best;
    }

    void castar_dispatch(int64_t t) {
        int64_t e = t / 4;
        for (size_t s = 0; s < queue.size(); ++s) {
            if (!active[s] || queue[s].empty()) continue;
            if (e - last_dispatch_cycle[s] < cycles_per_dispatch) continue;
            int32_t rid = queue[s].front();
            Robot& r = robots[rid];
            if (r.join_phase > t) continue;
            bind_task(rid, t);

            const Aisle& ent = g.aisles[g.stations[s].entrance_aisle];
            auto goals = drop_goals(r.outlet);
            int64_t horizon = t + cfg.castar_horizon_phases;
            auto leg1 = sipp.plan(obstacles, ent.first, ent.dir, t + 1, goals,
                                  horizon, /*can_delay_start=*/true);
            if (!leg1) {
                ++m.plan_failures;
                continue;
            }
            Cell drop{(int16_t)(leg1->cells.back() / g.cols),
                      (int16_t)(leg1->cells.back() % g.cols)};
            Dir drop_dir = cell_axis_dir(drop);
            int16_t j = pick_return_station(drop, drop_dir, (int)s);
            if (j < 0) {
                ++m.plan_failures;
                continue;
            }
            // halt on the drop cell to release the parcel
            int pause = cfg.castar_drop_pause_phases;
            bool stand_ok = true;
            for (int w = 1; w <= pause; ++w)
                if (obstacles.is_blocked(g.cell_index(drop), leg1->end() + w))
                    stand_ok = false;
            if (!stand_ok) {
                ++m.plan_failures;
                continue;
            }
            const Aisle& ea = g.aisles[g.stations[j].exit_aisle];
            auto leg2 = sipp.plan(obstacles, drop, drop_dir,
                                  leg1->end() + pause, {{ea.last, ea.dir}},
                                  horizon, /*can_delay_start=*/false);
            if (!leg2) {
                ++m.plan_failures;
                continue;
            }
            r.plan = leg1->cells;
            for (int w = 0; w < pause; ++w) r.plan.push_back(leg1->cells.back());
            r.plan.insert(r.plan.end(), leg2->cells.begin() + 1,
                          leg2->cells.end());
            r.script = &r.plan;
            r.script_start = leg1->start;
            r.drop_idx = (int32_t)leg1->cells.size() - 1 + pause;
            r.dest = j;
            r.moves = 0;
            for (size_t i = 1; i < r.plan.size(); ++i)
                if (r.plan[i] != r.plan[i - 1]) ++r.moves;
            for (size_t i = 0; i < r.plan.size(); ++i)
                obstacles.block(r.plan[i], r.script_start + (int64_t)i);
            r.st = Robot::St::Dispatched;
            queue[s].pop_front();
            --balance[s];
            ++balance[j];
            last_dispatch_cycle[s] = e;
        }
    }

    // ---- shared ----------------------------------------------------------

    void finish(Robot& r, int32_t rid, int64_t t) {
        r.st = Robot::St::Queued;
        r.station = r.dest;
        r.join_phase = t + 1;
        r.seq = seq_counter++;
        r.outlet = -1;
        r.script = nullptr;
        r.plan.clear();
        r.plan.shrink_to_fit();
        queue[r.dest].push_back(rid);
        if (r.counted) {
            full_sum += (t + 1 - r.load_phase) * cfg.rcs.tau_e;
            ++full_count;
            r.counted = false;
        }
    }

    SimMetrics run() {
        using clock = std::chrono::steady_clock;
        for (int64_t t = 0; t < total_phases; ++t) {
            // controller decisions
            auto t0 = clock::now();
            if (cfg.controller == ControllerKind::Rcs) {
                if (t % 4 == 0) rcs_cycle(t / 4);
            } else {
                if (t % 64 == 0) obstacles.forget_before(t - 4);
                castar_dispatch(t);
            }
            decision_seconds +=
                std::chrono::duration<double>(clock::now() - t0).count();

            // robots entering this phase
            for (int32_t rid = 0; rid < cfg.n_robots; ++rid) {
                Robot& r = robots[rid];
                if (r.st == Robot::St::Dispatched && r.script_start == t) {
                    r.st = Robot::St::InNet;
                    in_net.push_back(rid);
                }
            }
            // movement, conflicts, metrics
            scanner.begin_phase();
            for (size_t i = 0; i < in_net.size();) {
                int32_t rid = in_net[i];
                Robot& r = robots[rid];
                int64_t idx = t - r.script_start;
                int32_t cell = (*r.script)[idx];
                scanner.feed(rid, cell, m.conflicts);
                if (cfg.collect_trace) m.trace.push_back({t, rid, cell});
                if (idx > 0 && (*r.script)[idx - 1] != cell && in_window(t)) {
                    int from = (*r.script)[idx - 1];
                    int dr = cell / g.cols - from / g.cols;
                    int dc = cell % g.cols - from % g.cols;
                    Dir d = dr == 1    ? Dir::South
                            : dr == -1 ? Dir::North
                            : dc == 1  ? Dir::East
                                       : Dir::West;
                    ++m.segment_flow[(size_t)from * 4 + (size_t)d];
                }
                if (idx == r.drop_idx && in_window(t)) {
                    ++m.completed;
                    service_sum += (t - r.script_start) * cfg.rcs.tau_e;
                    lead_sum += (t - r.load_phase) * cfg.rcs.tau_e;
                    dist_sum += r.moves * cfg.cell_len;
                    r.counted = true;
                }
                if (idx + 1 == (int64_t)r.script->size()) {
                    finish(r, rid, t);
                    in_net[i] = in_net.back();
                    in_net.pop_back();
                } else {
                    ++i;
                }
            }
            scanner.end_phase(m.conflicts);
            if (in_window(t)) {
                m.avg_robots_in_network += (double)in_net.size();
                ++innet_samples;
            }
            if ((t & 63) == 0) {  // robot conservation
                int64_t queued = 0;
                for (const auto& q : queue) queued += (int64_t)q.size();
                int64_t dispatched = 0;
                for (const auto& r : robots)
                    dispatched += r.st == Robot::St::Dispatched;
                if (queued + dispatched + (int64_t)in_net.size() != cfg.n_robots)
                    throw std::logic_error("robot accounting broke");
            }
        }

        for (int64_t t = 0; t < 8; ++t)
            if (vp_count_in_network(g, t) !=
                (int)llround(n_vp_phase_count()))
                m.vp_count_constant = false;

        m.throughput = m.completed * 3600.0 / cfg.measure_s;
        if (m.completed > 0) {
            m.avg_service_time = service_sum / m.completed;
            m.avg_lead_time = lead_sum / m.completed;
            m.avg_service_distance_m = dist_sum / m.completed;
            m.avg_service_distance_cells = m.avg_service_distance_m / cfg.cell_len;
        }
        if (full_count > 0) m.avg_full_cycle_time = full_sum / full_count;
        if (innet_samples > 0) m.avg_robots_in_network /= innet_samples;
        int64_t cycles = total_phases / 4;
        if (cycles > 0) m.decision_ms_per_cycle = decision_seconds * 1000.0 / cycles;
        return m;
    }

    double n_vp_phase_count() const {
        return (g.n_h * (g.n_v - 1) + g.n_v * (g.n_h - 1)) / 2.0;
    }
};

}  // namespace

SimMetrics run_simulation(const SimConfig& cfg, const GridLayout& layout,
                          const PathFamily& family) {
    cfg.validate();
    Engine eng(cfg, layout, family);
    return eng.run();
}

SimMetrics run_simulation(const SimConfig& cfg) {
    cfg.validate();
    GridLayout g = build_layout(cfg.n_h, cfg.n_v, cfg.cell_len,
                                cfg.n_stations > 0 ? cfg.n_stations
                                                   : cfg.n_h + cfg.n_v);
    PathFamily fam = enumerate_feasible_paths(g, cfg.max_turns);
    return run_simulation(cfg, g, fam);
}

namespace {

MetricStat stat_of(const std::vector<double>& xs) {
    MetricStat s;
    if (xs.empty()) return s;
    double sum = 0;
    for (double x : xs) sum += x;
    s.mean = sum / xs.size();
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.stderr_ = std::sqrt(ss / (xs.size() - 1) / xs.size());
    }
    return s;
}

}  // namespace

ReplicationSummary replicate(const SimConfig& cfg, int n_reps) {
    if (n_reps < 1) throw std::invalid_argument("need at least one replication");
    GridLayout g = build_layout(cfg.n_h, cfg.n_v, cfg.cell_len,
                                cfg.n_stations > 0 ? cfg.n_stations
                                                   : cfg.n_h + cfg.n_v);
    PathFamily fam = enumerate_feasible_paths(g, cfg.max_turns);
    ReplicationSummary sum;
    sum.n_reps = n_reps;
    std::vector<double> th, sv, fc, dm, rn, dc;
    for (int rep = 0; rep < n_reps; ++rep) {
        SimConfig c = cfg;
        c.seed = split_seed(cfg.seed, (uint64_t)rep);
        SimMetrics r = run_simulation(c, g, fam);
        th.push_back(r.throughput);
        sv.push_back(r.avg_service_time);
        fc.push_back(r.avg_full_cycle_time);
        dm.push_back(r.avg_service_distance_m);
        rn.push_back(r.avg_robots_in_network);
        dc.push_back(r.decision_ms_per_cycle);
        sum.runs.push_back(std::move(r));
    }
    sum.throughput = stat_of(th);
    sum.service_time = stat_of(sv);
    sum.full_cycle_time = stat_of(fc);
    sum.distance_m = stat_of(dm);
    sum.robots_in_network = stat_of(rn);
    sum.decision_ms = stat_of(dc);
    return sum;
}

std::vector<int64_t> flow_heatmap(const GridLayout& layout,
                                  const std::vector<TraceRow>& trace) {
    std::vector<int64_t> flow((size_t)layout.cell_count() * 4, 0);
    // trace rows are (t, robot, cell); reconstruct per-robot transitions
    std::unordered_map<int32_t, std::pair<int64_t, int32_t>> last;
    for (const auto& row : trace) {
        auto it = last.find(row.robot);
        if (it != last.end() && it->second.first == row.t - 1 &&
            it->second.second != row.cell) {
            int from = it->second.second;
            int dr = row.cell / layout.cols - from / layout.cols;
            int dc = row.cell % layout.cols - from % layout.cols;
            Dir d = dr == 1    ? Dir::South
                    : dr == -1 ? Dir::North
                    : dc == 1  ? Dir::East
                               : Dir::West;
            ++flow[(size_t)from * 4 + (size_t)d];
        }
        last[row.robot] = {row.t, row.cell};
    }
    return flow;
}

std::string trace_to_csv(const GridLayout& layout,
                         const std::vector<TraceRow>& trace) {
    std::ostringstream os;
    os << "phase,robot,cell_r,cell_c\n";
    char buf[64];
    for (const auto& row : trace) {
        std::snprintf(buf, sizeof buf, "%lld,%d,%d,%d\n",
                      (long long)row.t, row.robot, row.cell / layout.cols,
                      row.cell % layout.cols);
        os << buf;
    }
    return os.str();
}

}  // namespace rss
