#include "rss/fpa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace rss {

namespace {

int64_t pack_slot(int32_t cell, int64_t phase) {
    return (static_cast<int64_t>(cell) << 20) | phase;
}

}  // namespace

FpaInstance make_fpa_instance(
    const PathFamily& family, const ReservationTable& table,
    const std::vector<std::pair<int16_t, int32_t>>& station_outlet_demands,
    int64_t now, int horizon_cycles, double tau_e, double tau_c,
    const std::vector<char>& station_active, double delay_penalty_scale) {
    FpaInstance inst;
    inst.tau_c = tau_c;
    inst.station_count = static_cast<int16_t>(family.layout().stations.size());
    for (auto [station, outlet] : station_outlet_demands) {
        FpaDemand d;
        d.station = station;
        d.outlet = outlet;
        double min_travel = std::numeric_limits<double>::infinity();
        for (int32_t pid : family.from_station_via(station, outlet)) {
            const FeasiblePath& p = family.path(pid);
            if (!station_active[p.dest_station]) continue;
            min_travel = std::min(min_travel, p.travel_time(tau_e));
            for (int off = 0; off < horizon_cycles; ++off) {
                if (!table.path_free_at(p, now + off)) continue;
                FpaOption opt;
                opt.path_id = pid;
                opt.entry_offset = off;
                opt.dest_station = p.dest_station;
                opt.cost = p.travel_time(tau_e) + off * tau_c;
                opt.slots.reserve(p.reserved.size());
                for (const auto& s : p.reserved)
                    opt.slots.push_back(pack_slot(
                        s.cell,
                        ReservationTable::slot_phase(p, now + off, s) - 4 * now));
                d.options.push_back(std::move(opt));
            }
        }
        d.delay_penalty =
            delay_penalty_scale *
            (tau_c + (std::isinf(min_travel) ? 10.0 * tau_c : min_travel));
        inst.demands.push_back(std::move(d));
    }
    return inst;
}

bool fpa_feasible(const FpaInstance& inst, const std::vector<int32_t>& choice,
                  std::string* why) {
    if (choice.size() != inst.demands.size()) {
        if (why) *why = "choice vector size mismatch";
        return false;
    }
    std::unordered_set<int64_t> used;
    for (size_t i = 0; i < choice.size(); ++i) {
        if (choice[i] < 0) continue;
        if (choice[i] >= static_cast<int32_t>(inst.demands[i].options.size())) {
            if (why) *why = "option index out of range";
            return false;
        }
        const FpaOption& o = inst.demands[i].options[choice[i]];
        for (int64_t s : o.slots)
            if (!used.insert(s).second) {
                if (why) *why = "node capacity exceeded";
                return false;
            }
    }
    if (inst.enforce_flow_conservation) {
        std::vector<int> net(inst.station_count, 0);
        for (size_t i = 0; i < choice.size(); ++i) {
            if (choice[i] < 0) continue;
            const FpaOption& o = inst.demands[i].options[choice[i]];
            ++net[inst.demands[i].station];
            --net[o.dest_station];
        }
        for (int v : net)
            if (v != 0) {
                if (why) *why = "flow conservation violated";
                return false;
            }
    }
    return true;
}

namespace {

struct Searcher {
    const FpaInstance& inst;
    std::vector<std::vector<int32_t>> sorted_opts;  // per-demand, cheapest-first
    std::vector<int32_t> order;                     // most constrained first
    std::vector<double> tail_min;
    std::unordered_set<int64_t> used;
    std::vector<int32_t> cur, best;
    std::vector<int> net_flow;
    double cur_cost = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    int64_t nodes = 0;

    void dfs(size_t k) {
        ++nodes;
        if (cur_cost + tail_min[k] >= best_cost - 1e-12) return;
        if (k == order.size()) {
            if (inst.enforce_flow_conservation)
                for (int v : net_flow)
                    if (v != 0) return;
            best = cur;
            best_cost = cur_cost;
            return;
        }
        int32_t di = order[k];
        const FpaDemand& d = inst.demands[di];
        for (int32_t oi : sorted_opts[di]) {
            const FpaOption& o = d.options[oi];
            if (o.cost >= d.delay_penalty) break;  // delay dominates the rest
            bool clash = false;
            for (int64_t s : o.slots)
                if (used.count(s)) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            for (int64_t s : o.slots) used.insert(s);
            ++net_flow[d.station];
            --net_flow[o.dest_station];
            cur[di] = oi;
            cur_cost += o.cost;
            dfs(k + 1);
            cur_cost -= o.cost;
            cur[di] = -1;
            ++net_flow[o.dest_station];
            --net_flow[d.station];
            for (int64_t s : o.slots) used.erase(s);
        }
        cur_cost += d.delay_penalty;  // the always-feasible fallback
        dfs(k + 1);
        cur_cost -= d.delay_penalty;
    }
};

}  // namespace

FpaSolution solve_fpa_exact(const FpaInstance& inst) {
    size_t nd = inst.demands.size();
    Searcher s{inst, {}, {}, {}, {}, {}, {}, {}, 0, 0, 0};
    s.sorted_opts.resize(nd);
    std::vector<double> dmin(nd);
    for (size_t i = 0; i < nd; ++i) {
        const auto& opts = inst.demands[i].options;
        s.sorted_opts[i].resize(opts.size());
        for (size_t o = 0; o < opts.size(); ++o)
            s.sorted_opts[i][o] = static_cast<int32_t>(o);
        std::sort(s.sorted_opts[i].begin(), s.sorted_opts[i].end(),
                  [&](int32_t a, int32_t b) {
                      return opts[a].cost != opts[b].cost
                                 ? opts[a].cost < opts[b].cost
                                 : opts[a].path_id < opts[b].path_id;
                  });
        dmin[i] = inst.demands[i].delay_penalty;
        if (!opts.empty())
            dmin[i] = std::min(dmin[i], opts[s.sorted_opts[i][0]].cost);
    }
    s.order.resize(nd);
    for (size_t i = 0; i < nd; ++i) s.order[i] = static_cast<int32_t>(i);
    std::sort(s.order.begin(), s.order.end(), [&](int32_t a, int32_t b) {
        return inst.demands[a].options.size() < inst.demands[b].options.size();
    });
    s.tail_min.assign(nd + 1, 0.0);
    for (size_t k = nd; k-- > 0;)
        s.tail_min[k] = s.tail_min[k + 1] + dmin[s.order[k]];

    s.cur.assign(nd, -1);
    s.net_flow.assign(inst.station_count, 0);
    double all_delay = 0;
    for (const auto& d : inst.demands) all_delay += d.delay_penalty;
    s.best.assign(nd, -1);
    s.best_cost = all_delay + 1e-9;
    s.dfs(0);

    FpaSolution out;
    out.choice = s.best;
    out.objective = fpa_objective(inst, s.best);
    out.nodes_explored = s.nodes;
    out.proven_optimal = true;
    return out;
}

double fpa_objective(const FpaInstance& inst, const std::vector<int32_t>& choice) {
    std::string why;
    if (!fpa_feasible(inst, choice, &why))
        throw std::invalid_argument("infeasible assignment: " + why);
    double total = 0;
    for (size_t i = 0; i < choice.size(); ++i)
        total += choice[i] < 0 ? inst.demands[i].delay_penalty
                               : inst.demands[i].options[choice[i]].cost;
    return total;
}

double heuristic_gap(const FpaInstance& inst,
                     const std::vector<int32_t>& heuristic_choice) {
    double h = fpa_objective(inst, heuristic_choice);
    double x = solve_fpa_exact(inst).objective;
    if (x == 0.0) return h == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return h / x;
}

std::string FpaInstance::to_json() const {
    nlohmann::json j;
    j["tau_c"] = tau_c;
    j["enforce_flow_conservation"] = enforce_flow_conservation;
    j["station_count"] = station_count;
    j["demands"] = nlohmann::json::array();
    for (const auto& d : demands) {
        nlohmann::json jd;
        jd["station"] = d.station;
        jd["outlet"] = d.outlet;
        jd["delay_penalty"] = d.delay_penalty;
        jd["options"] = nlohmann::json::array();
        for (const auto& o : d.options) {
            nlohmann::json jo;
            jo["path_id"] = o.path_id;
            jo["entry_offset"] = o.entry_offset;
            jo["dest_station"] = o.dest_station;
            jo["cost"] = o.cost;
            jo["slots"] = o.slots;
            jd["options"].push_back(jo);
        }
        j["demands"].push_back(jd);
    }
    return j.dump(2);
}

FpaInstance FpaInstance::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FpaInstance inst;
    inst.tau_c = j.at("tau_c").get<double>();
    inst.enforce_flow_conservation = j.at("enforce_flow_conservation").get<bool>();
    inst.station_count = j.at("station_count").get<int16_t>();
    for (const auto& jd : j.at("demands")) {
        FpaDemand d;
        d.station = jd.at("station").get<int16_t>();
        d.outlet = jd.at("outlet").get<int32_t>();
        d.delay_penalty = jd.at("delay_penalty").get<double>();
        for (const auto& jo : jd.at("options")) {
            FpaOption o;
            o.path_id = jo.at("path_id").get<int32_t>();
            o.entry_offset = jo.at("entry_offset").get<int32_t>();
            o.dest_station = jo.at("dest_station").get<int16_t>();
            o.cost = jo.at("cost").get<double>();
            o.slots = jo.at("slots").get<std::vector<int64_t>>();
            d.options.push_back(std::move(o));
        }
        inst.demands.push_back(std::move(d));
    }
    return inst;
}

}  // namespace rss
