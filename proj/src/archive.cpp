#include "moana/archive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace moana {

std::vector<int> cell_index(const ObjectiveVector& objectives, const GridSpec& grid) {
    if (!grid.defined) {
        throw std::logic_error("cell_index: grid is undefined");
    }
    std::vector<int> cell(objectives.size());
    for (std::size_t o = 0; o < objectives.size(); ++o) {
        const double span = grid.upper[o] - grid.lower[o];
        const double frac = (objectives[o] - grid.lower[o]) / span;
        int idx = static_cast<int>(std::floor(frac * grid.divisions));
        cell[o] = std::clamp(idx, 0, grid.divisions - 1);
    }
    return cell;
}

Archive::Archive(int capacity, int grid_divisions, double inflation,
                 int remove_count, int guide_cell_count)
    : capacity_(capacity),
      remove_count_(remove_count),
      guide_cell_count_(guide_cell_count) {
    if (capacity < 1) throw std::invalid_argument("Archive: capacity must be >= 1");
    if (grid_divisions < 1) throw std::invalid_argument("Archive: grid_divisions must be >= 1");
    if (inflation < 0.0) throw std::invalid_argument("Archive: inflation must be >= 0");
    if (remove_count < 1) throw std::invalid_argument("Archive: remove_count must be >= 1");
    if (guide_cell_count < 1) throw std::invalid_argument("Archive: guide_cell_count must be >= 1");
    grid_.divisions = grid_divisions;
    grid_.inflation = inflation;
}

void Archive::rebuild_grid() {
    if (members_.empty()) {
        grid_.defined = false;
        return;
    }
    const std::size_t n_obj = members_.front().objectives.size();
    extent_min_.assign(n_obj, std::numeric_limits<double>::infinity());
    extent_max_.assign(n_obj, -std::numeric_limits<double>::infinity());
    for (const auto& m : members_) {
        for (std::size_t o = 0; o < n_obj; ++o) {
            extent_min_[o] = std::min(extent_min_[o], m.objectives[o]);
            extent_max_[o] = std::max(extent_max_[o], m.objectives[o]);
        }
    }
    grid_.lower.resize(n_obj);
    grid_.upper.resize(n_obj);
    for (std::size_t o = 0; o < n_obj; ++o) {
        const double range = extent_max_[o] - extent_min_[o];
        if (range == 0.0) {
            // degenerate dimension: widen to keep cell_index well defined
            grid_.lower[o] = extent_min_[o] - 0.5;
            grid_.upper[o] = extent_max_[o] + 0.5;
        } else {
            grid_.lower[o] = extent_min_[o] - grid_.inflation * range;
            grid_.upper[o] = extent_max_[o] + grid_.inflation * range;
        }
    }
    grid_.defined = true;
    for (auto& m : members_) {
        m.cell = cell_index(m.objectives, grid_);
    }
}

bool Archive::extends_extent(const ObjectiveVector& objectives) const {
    if (extent_min_.empty()) return true;
    for (std::size_t o = 0; o < objectives.size(); ++o) {
        if (objectives[o] < extent_min_[o] || objectives[o] > extent_max_[o]) return true;
    }
    return false;
}

bool Archive::try_insert(const DecisionVector& decision, const ObjectiveVector& objectives,
                         std::mt19937_64& rng, double total_violation) {
    // gate: reject if dominated by, or an exact duplicate of, anything
    // offered so far (members and evicted points alike)
    for (const auto& m : members_) {
        if (violation_dominates(m.objectives, m.violation, objectives, total_violation)) {
            return false;
        }
        if (m.objectives == objectives && m.violation == total_violation) {
            return false;
        }
    }
    for (const auto& t : tombstones_) {
        if (violation_dominates(t.objectives, t.violation, objectives, total_violation)) {
            return false;
        }
        if (t.objectives == objectives && t.violation == total_violation) {
            return false;
        }
    }

    // remove everything the candidate dominates
    members_.erase(std::remove_if(members_.begin(), members_.end(),
                                  [&](const ArchiveMember& m) {
                                      return violation_dominates(objectives, total_violation,
                                                                 m.objectives, m.violation);
                                  }),
                   members_.end());
    tombstones_.erase(std::remove_if(tombstones_.begin(), tombstones_.end(),
                                     [&](const GatePoint& t) {
                                         return violation_dominates(objectives, total_violation,
                                                                    t.objectives, t.violation);
                                     }),
                      tombstones_.end());

    // pre-insertion snapshot of the most populated cell, used for eviction
    std::vector<std::size_t> crowded_members;
    const bool will_overflow = size() >= capacity_;
    if (will_overflow) {
        if (!grid_.defined) rebuild_grid();
        std::map<std::vector<int>, std::vector<std::size_t>> cells;
        for (std::size_t i = 0; i < members_.size(); ++i) {
            cells[members_[i].cell].push_back(i);
        }
        std::size_t top = 0;
        for (const auto& [cell, idx] : cells) top = std::max(top, idx.size());
        std::vector<const std::vector<std::size_t>*> tied;
        for (const auto& [cell, idx] : cells) {
            if (idx.size() == top) tied.push_back(&idx);
        }
        std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
        crowded_members = *tied[pick(rng)];
    }

    ArchiveMember member;
    member.decision = decision;
    member.objectives = objectives;
    member.violation = total_violation;
    if (grid_.defined) member.cell = cell_index(objectives, grid_);
    const bool extended = extends_extent(objectives);
    members_.push_back(std::move(member));

    if (will_overflow) {
        const int over = size() - capacity_;
        const int evict = std::min(remove_count_, over);
        std::vector<std::size_t> pool = crowded_members;
        std::vector<std::size_t> doomed;
        for (int k = 0; k < evict && !pool.empty(); ++k) {
            std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
            const std::size_t j = pick(rng);
            doomed.push_back(pool[j]);
            pool.erase(pool.begin() + j);
        }
        std::sort(doomed.rbegin(), doomed.rend());
        for (std::size_t idx : doomed) {
            tombstones_.push_back(
                {members_[idx].objectives, members_[idx].violation});
            members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(idx));
        }
    }

    if (extended) rebuild_grid();
    return true;
}

const ArchiveMember& Archive::select_guide(std::mt19937_64& rng) const {
    if (members_.empty()) {
        throw std::logic_error(
            "select_guide: archive is empty; seed it with the initial population first");
    }
    // occupancy of every non-empty cell, grouped by count
    std::map<std::vector<int>, int> counts;
    for (const auto& m : members_) ++counts[m.cell];
    std::map<int, std::vector<std::vector<int>>> by_count;
    for (const auto& [cell, n] : counts) by_count[n].push_back(cell);

    std::vector<std::vector<int>> chosen;
    int remaining = guide_cell_count_;
    for (auto& [n, cells] : by_count) {
        if (remaining <= 0) break;
        if (static_cast<int>(cells.size()) <= remaining) {
            for (auto& c : cells) chosen.push_back(c);
            remaining -= static_cast<int>(cells.size());
        } else {
            // tie at the cutoff: pick the remaining slots uniformly at random
            for (int k = 0; k < remaining; ++k) {
                std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
                const std::size_t j = pick(rng);
                chosen.push_back(cells[j]);
                cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(j));
            }
            remaining = 0;
        }
    }

    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        for (const auto& c : chosen) {
            if (members_[i].cell == c) {
                pool.push_back(i);
                break;
            }
        }
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    return members_[pool[pick(rng)]];
}

std::vector<ObjectiveVector> Archive::objectives() const {
    std::vector<ObjectiveVector> out;
    out.reserve(members_.size());
    for (const auto& m : members_) out.push_back(m.objectives);
    return out;
}

}  // namespace moana
