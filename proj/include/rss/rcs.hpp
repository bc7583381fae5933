#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rss/paths.hpp"
#include "rss/reservation.hpp"

namespace rss {

struct RcsAssignment {
    int32_t path_id = -1;
    int64_t entry_cycle = 0;
};

// Ranking of admissible (path, entry) pairs. MinCost minimizes entry delay
// plus travel time together, mirroring the per-cycle assignment objective;
// the other two take the smallest entry cycle first and only break ties.
enum class PathTieBreak { MinCost, ShortestLength, FewestTurns };

// Path choice for one candidate: the earliest admissible entry cycle wins;
// within one cycle the tie-break order applies, then the destination with
// the lowest balance counter, then ids. Destinations must be active.
std::optional<RcsAssignment> choose_rcs_assignment(
    const PathFamily& family, const ReservationTable& table,
    const std::vector<char>& station_active,
    const std::vector<int32_t>& station_balance, int station, int outlet,
    int64_t now, int horizon_cycles,
    PathTieBreak tie = PathTieBreak::MinCost, int wait_weight = 1);

// Candidate processing order of the per-cycle heuristic: longest waiting
// time first, then lowest station id, then lowest robot id.
struct RcsCandidate {
    int32_t robot = -1;
    int16_t station = -1;
    int32_t outlet = -1;
    double waiting_s = 0;
};

std::vector<int> rcs_candidate_order(const std::vector<RcsCandidate>& cands);

}  // namespace rss
