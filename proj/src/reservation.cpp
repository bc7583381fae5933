#include "rss/reservation.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace rss {

ReservationTable::ReservationTable(const GridLayout& layout, int window_cycles)
    : layout_(&layout),
      window_cycles_(window_cycles),
      window_phases_(4LL * window_cycles) {
    slots_.assign(static_cast<size_t>(layout.cell_count()) * window_phases_, {});
}

int32_t ReservationTable::occupant(int32_t cell, int64_t phase) const {
    const Slot& s = slots_[ring_index(cell, phase)];
    return s.phase == phase ? s.robot : -1;
}

bool ReservationTable::path_free_at(const FeasiblePath& p, int64_t entry) const {
    for (const auto& s : p.reserved) {
        int64_t ph = slot_phase(p, entry, s);
        const Slot& slot = slots_[ring_index(s.cell, ph)];
        if (slot.phase == ph) return false;
    }
    return true;
}

int64_t ReservationTable::entry_cycle(const FeasiblePath& p, int64_t now,
                                      int search_cycles) const {
    if (p.reserved.back().t >= window_phases_ - 4)
        throw std::invalid_argument("path longer than the reservation window");
    int64_t lo = std::max(now, now_cycle_);
    for (int64_t e = lo; e < lo + search_cycles; ++e)
        if (path_free_at(p, e)) return e;
    return kBeyondHorizon;
}

void ReservationTable::reserve(const FeasiblePath& p, int64_t entry,
                               int32_t robot) {
    for (const auto& s : p.reserved) {
        int64_t ph = slot_phase(p, entry, s);
        if (ph >= (now_cycle_ + window_cycles_) * 4)
            throw std::invalid_argument("reservation beyond table window");
        Slot& slot = slots_[ring_index(s.cell, ph)];
        if (slot.phase == ph)
            throw std::logic_error("slot double-booked: VP capacity is one robot");
        slot.phase = ph;
        slot.robot = robot;
    }
}

void ReservationTable::release_expired(int64_t now_cycle) {
    if (now_cycle < now_cycle_)
        throw std::invalid_argument("watermark must advance monotonically");
    now_cycle_ = now_cycle;
}

std::string ReservationTable::to_csv() const {
    std::ostringstream os;
    os << "cycle,cell_r,cell_c,phase,robot\n";
    std::vector<const Slot*> live;
    struct Row {
        int64_t phase;
        int32_t cell;
        int32_t robot;
    };
    std::vector<Row> rows;
    int64_t lo = now_cycle_ * 4;
    for (int32_t cell = 0; cell < layout_->cell_count(); ++cell) {
        for (int64_t ph = lo; ph < lo + window_phases_; ++ph) {
            const Slot& s = slots_[ring_index(cell, ph)];
            if (s.phase == ph) rows.push_back({ph, cell, s.robot});
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.phase != b.phase ? a.phase < b.phase : a.cell < b.cell;
    });
    char buf[96];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%lld,%d,%d,%lld,%d\n",
                      static_cast<long long>(r.phase / 4), r.cell / layout_->cols,
                      r.cell % layout_->cols, static_cast<long long>(r.phase % 4),
                      r.robot);
        os << buf;
    }
    return os.str();
}

}  // namespace rss
