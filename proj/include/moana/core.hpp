/**
 * @file core.hpp
 * @brief Dominance relations, Pareto filtering, and the shared problem data
 *        model used by every other part of the library.
 *
 * All objectives are minimized. Feasibility follows the standard
 * feasibility-rule ordering: feasible beats infeasible, lower total
 * violation beats higher, and two feasible points compare by dominance.
 */

#ifndef MOANA_CORE_HPP
#define MOANA_CORE_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace moana {

using DecisionVector = std::vector<double>;
using ObjectiveVector = std::vector<double>;

/// Total violation below this threshold counts as feasible.
inline constexpr double kFeasibilityTol = 1e-9;

/// Componentwise position comparisons use this tolerance.
inline constexpr double kPositionTol = 1e-12;

/// Slack values of the inequality constraints g_i(x) >= 0.
struct ConstraintReport {
    std::vector<double> values;      // slack per constraint, >= 0 when satisfied
    bool feasible = true;
    double total_violation = 0.0;    // sum of max(0, -g_i)
};

/// Builds a report from raw slack values.
ConstraintReport make_constraint_report(std::vector<double> slacks);

/// A benchmark or engineering problem: box bounds, evaluator, optional
/// constraints, optional analytic front sampler.
struct ProblemDef {
    std::string name;
    int dim = 0;
    std::vector<std::pair<double, double>> bounds;   // (lower, upper) per variable
    int n_obj = 2;
    std::function<ObjectiveVector(const DecisionVector&)> evaluate;
    std::function<ConstraintReport(const DecisionVector&)> constraints;            // may be null
    std::function<std::vector<ObjectiveVector>(int)> analytic_front;               // may be null
};

/// True iff a is no worse than b in every objective and strictly better in
/// at least one (minimization). Throws on length mismatch.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Feasibility-rule comparison on (objectives, total violation) pairs.
/// Reduces exactly to dominates() when both sides are feasible.
bool violation_dominates(const ObjectiveVector& fa, double va,
                         const ObjectiveVector& fb, double vb);

/// Feasibility-rule comparison on full constraint reports.
bool constrained_dominates(const ObjectiveVector& fa, const ConstraintReport& ra,
                           const ObjectiveVector& fb, const ConstraintReport& rb);

/// Returns the members not dominated by any other member, exact duplicates
/// kept once. Output is sorted lexicographically. Empty input yields empty
/// output.
std::vector<ObjectiveVector> non_dominated_filter(const std::vector<ObjectiveVector>& points);

/// Componentwise clamp of x into the box.
DecisionVector clamp_to_bounds(DecisionVector x,
                               const std::vector<std::pair<double, double>>& bounds);

/// True iff every component lies inside the box (closed interval).
bool within_bounds(const DecisionVector& x,
                   const std::vector<std::pair<double, double>>& bounds);

}  // namespace moana

#endif  // MOANA_CORE_HPP
