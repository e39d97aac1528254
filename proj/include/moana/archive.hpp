/**
 * @file archive.hpp
 * @brief Capacity-bounded non-dominated repository with a hypercube grid
 *        over objective space.
 *
 * The grid supplies density bookkeeping: guides are drawn from the least
 * populated cells and, when the archive overflows, members are evicted from
 * the most populated cell.
 */

#ifndef MOANA_ARCHIVE_HPP
#define MOANA_ARCHIVE_HPP

#include <random>
#include <vector>

#include "moana/core.hpp"

namespace moana {

/// Inflated per-objective bounds partitioned into a fixed number of
/// divisions per dimension.
struct GridSpec {
    std::vector<double> lower;
    std::vector<double> upper;
    int divisions = 7;
    double inflation = 0.1;
    bool defined = false;
};

/// Cell coordinates of an objective vector. Out-of-grid points clamp to the
/// edge cells.
std::vector<int> cell_index(const ObjectiveVector& objectives, const GridSpec& grid);

struct ArchiveMember {
    DecisionVector decision;
    ObjectiveVector objectives;
    double violation = 0.0;   // total constraint violation; 0 for unconstrained problems
    std::vector<int> cell;
};

class Archive {
public:
    Archive(int capacity, int grid_divisions, double inflation,
            int remove_count, int guide_cell_count);

    /**
     * Offers a candidate. Rejected when any point offered so far dominates
     * it (under the feasibility-rule ordering) or an exact duplicate exists;
     * evicted points stay part of that gate so the members always form a
     * subset of the non-dominated set of everything ever offered. Otherwise
     * the members it dominates are removed, the candidate is inserted, and
     * an overflow is resolved by evicting members drawn uniformly at random
     * from the pre-insertion most populated cell (ties between cells broken
     * uniformly at random). The grid is rebuilt whenever an insertion
     * extends the objective-space extent.
     *
     * @return true when the candidate was inserted.
     */
    bool try_insert(const DecisionVector& decision, const ObjectiveVector& objectives,
                    std::mt19937_64& rng, double total_violation = 0.0);

    /**
     * Draws a guide: pools the members of the guide_cell_count least
     * populated cells (cell ties broken uniformly at random) and returns one
     * pool member uniformly at random. Throws when the archive is empty.
     */
    const ArchiveMember& select_guide(std::mt19937_64& rng) const;

    /// Recomputes the inflated grid bounds from the current members and
    /// refreshes every member's cell coordinates. No-op while empty.
    void rebuild_grid();

    const std::vector<ArchiveMember>& members() const { return members_; }
    const GridSpec& grid() const { return grid_; }
    int capacity() const { return capacity_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }

    /// Objective vectors of all members.
    std::vector<ObjectiveVector> objectives() const;

private:
    struct GatePoint {
        ObjectiveVector objectives;
        double violation;
    };

    std::vector<ArchiveMember> members_;
    // evicted points whose dominance claims are still live; together with
    // the members they form the non-dominated shadow of everything offered
    std::vector<GatePoint> tombstones_;
    GridSpec grid_;
    int capacity_;
    int remove_count_;
    int guide_cell_count_;
    // member objective extent at the last grid rebuild
    std::vector<double> extent_min_;
    std::vector<double> extent_max_;

    bool extends_extent(const ObjectiveVector& objectives) const;
};

}  // namespace moana

#endif  // MOANA_ARCHIVE_HPP
