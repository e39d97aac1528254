#include "moana/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace moana {

ConstraintReport make_constraint_report(std::vector<double> slacks) {
    ConstraintReport report;
    report.values = std::move(slacks);
    for (double g : report.values) {
        if (g < 0.0) report.total_violation += -g;
    }
    report.feasible = report.total_violation <= kFeasibilityTol;
    return report;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dominates: objective vectors differ in length");
    }
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

bool violation_dominates(const ObjectiveVector& fa, double va,
                         const ObjectiveVector& fb, double vb) {
    const bool a_feasible = va <= kFeasibilityTol;
    const bool b_feasible = vb <= kFeasibilityTol;
    if (a_feasible && !b_feasible) return true;
    if (!a_feasible && b_feasible) return false;
    if (!a_feasible && !b_feasible) return va < vb;
    return dominates(fa, fb);
}

bool constrained_dominates(const ObjectiveVector& fa, const ConstraintReport& ra,
                           const ObjectiveVector& fb, const ConstraintReport& rb) {
    return violation_dominates(fa, ra.total_violation, fb, rb.total_violation);
}

namespace {

// O(n log n) sweep for the two-objective case: sort by (f1, f2) and keep
// points whose f2 strictly undercuts everything seen so far.
std::vector<ObjectiveVector> filter_two_objectives(std::vector<ObjectiveVector> points) {
    std::sort(points.begin(), points.end());
    std::vector<ObjectiveVector> kept;
    double best_f2 = std::numeric_limits<double>::infinity();
    for (auto& p : points) {
        if (p[1] < best_f2) {
            best_f2 = p[1];
            kept.push_back(std::move(p));
        }
    }
    return kept;
}

}  // namespace

std::vector<ObjectiveVector> non_dominated_filter(const std::vector<ObjectiveVector>& points) {
    if (points.empty()) return {};
    const std::size_t n_obj = points.front().size();
    for (const auto& p : points) {
        if (p.size() != n_obj) {
            throw std::invalid_argument("non_dominated_filter: mixed objective lengths");
        }
    }
    if (n_obj == 2) return filter_two_objectives(points);

    std::vector<ObjectiveVector> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < points.size() && !drop; ++j) {
            if (j == i) continue;
            if (dominates(points[j], points[i])) drop = true;
            // exact duplicates: keep only the first occurrence
            if (points[j] == points[i] && j < i) drop = true;
        }
        if (!drop) kept.push_back(points[i]);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

DecisionVector clamp_to_bounds(DecisionVector x,
                               const std::vector<std::pair<double, double>>& bounds) {
    for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = std::clamp(x[j], bounds[j].first, bounds[j].second);
    }
    return x;
}

bool within_bounds(const DecisionVector& x,
                   const std::vector<std::pair<double, double>>& bounds) {
    if (x.size() != bounds.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] < bounds[j].first || x[j] > bounds[j].second) return false;
    }
    return true;
}

}  // namespace moana
