#include "rss/rcs.hpp"

#include <algorithm>
#include <limits>

namespace rss {

std::optional<RcsAssignment> choose_rcs_assignment(
    const PathFamily& family, const ReservationTable& table,
    const std::vector<char>& station_active,
    const std::vector<int32_t>& station_balance, int station, int outlet,
    int64_t now, int horizon_cycles, PathTieBreak tie, int wait_weight) {
    const auto& ids = tie == PathTieBreak::FewestTurns
                          ? family.from_station_via(station, outlet)
                          : family.from_station_via_shortest(station, outlet);
    auto tiekey = [&](const FeasiblePath& fp) {
        return std::make_tuple(station_balance[fp.dest_station],
                               (int)fp.dest_station, fp.id);
    };

    int32_t best = -1;
    int64_t best_entry = 0;
    int64_t best_cost = std::numeric_limits<int64_t>::max();
    std::pair<int, int> best_rank{0, 0};
    for (int64_t e = now; e < now + horizon_cycles; ++e) {
        int64_t entry_phases = wait_weight * (e - now);
        if (tie == PathTieBreak::MinCost && best >= 0 &&
            entry_phases >= best_cost)
            break;  // later entries cannot beat the incumbent cost
        for (int32_t pid : ids) {
            const FeasiblePath& p = family.path(pid);
            if (!station_active[p.dest_station]) continue;
            if (tie == PathTieBreak::MinCost) {
                int64_t cost = entry_phases + p.total_phases;
                if (cost > best_cost) break;  // sorted by phases
                if (cost == best_cost && best >= 0) {
                    if (!table.path_free_at(p, e)) continue;
                    if (tiekey(p) < tiekey(family.path(best))) {
                        best = pid;
                        best_entry = e;
                    }
                    continue;
                }
                if (!table.path_free_at(p, e)) continue;
                best = pid;
                best_entry = e;
                best_cost = cost;
            } else {
                auto rank = tie == PathTieBreak::ShortestLength
                                ? std::make_pair((int)p.total_phases,
                                                 (int)p.turn_count)
                                : std::make_pair((int)p.turn_count,
                                                 (int)p.length_cells);
                if (best >= 0 && rank > best_rank) break;
                if (!table.path_free_at(p, e)) continue;
                if (best < 0 || rank < best_rank) {
                    best = pid;
                    best_entry = e;
                    best_rank = rank;
                } else if (tiekey(p) < tiekey(family.path(best))) {
                    best = pid;
                    best_entry = e;
                }
            }
        }
        if (tie != PathTieBreak::MinCost && best >= 0) break;
    }
    if (best < 0) return std::nullopt;
    return RcsAssignment{best, best_entry};
}

std::vector<int> rcs_candidate_order(const std::vector<RcsCandidate>& cands) {
    std::vector<int> order(cands.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (cands[a].waiting_s != cands[b].waiting_s)
            return cands[a].waiting_s > cands[b].waiting_s;
        if (cands[a].station != cands[b].station)
            return cands[a].station < cands[b].station;
        return cands[a].robot < cands[b].robot;
    });
    return order;
}

}  // namespace rss
