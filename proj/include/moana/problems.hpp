/**
 * @file problems.hpp
 * @brief Benchmark and engineering problem definitions: ZDT1-4 and ZDT6,
 *        MMF1-MMF7, and the welded-beam design problem, plus reference
 *        fronts for the distance-to-front indicator.
 */

#ifndef MOANA_PROBLEMS_HPP
#define MOANA_PROBLEMS_HPP

#include <string>
#include <utility>
#include <vector>

#include "moana/core.hpp"

namespace moana {

/// ZDT objective evaluation (ids 1, 2, 3, 4, 6). Accepts any dimension >= 2;
/// bounds are validated per function family.
ObjectiveVector evaluate_zdt(int id, const DecisionVector& x);

/// Two-variable multimodal benchmark evaluation (ids 1..7).
ObjectiveVector evaluate_mmf(int id, const DecisionVector& x);

/// Welded-beam design variables, all in inches.
struct WeldedBeamDesign {
    double h = 0.125;   // weld thickness
    double l = 0.1;     // weld length
    double t = 0.1;     // beam vertical dimension
    double b = 0.125;   // beam horizontal dimension
};

/// Cost and deflection objectives with the four constraint slacks
/// (shear stress, normal stress, b - h, buckling load).
std::pair<ObjectiveVector, ConstraintReport> evaluate_welded_beam(const WeldedBeamDesign& d);

struct ReferenceFront {
    enum class Provenance { analytic, sampled_oracle };
    std::vector<ObjectiveVector> points;
    Provenance provenance = Provenance::analytic;
};

/**
 * Builds a reference front of roughly `count` points. Problems with a
 * closed-form front sample it directly; the rest are brute-forced with a
 * dense uniform grid over the decision space (>= 1e6 points, refined until
 * the filtered set is large enough or a resolution cap is reached) followed
 * by farthest-point downsampling in range-normalized objective space.
 * Fewer than `count` points are returned when the front itself is smaller.
 */
ReferenceFront sample_reference_front(const ProblemDef& problem, int count);

/// ZDT problem with the given decision dimension (0 picks the default:
/// 10 for ZDT4, 30 otherwise).
ProblemDef make_zdt(int id, int dim = 0);

ProblemDef make_mmf(int id);

ProblemDef make_welded_beam();

/// Names accepted by make_problem, in registry order.
const std::vector<std::string>& problem_names();

/// Looks a problem up by name ("zdt1", "mmf4", "welded_beam"). zdt_dim
/// overrides the ZDT decision dimension when positive. Throws on unknown
/// names.
ProblemDef make_problem(const std::string& name, int zdt_dim = 0);

}  // namespace moana

#endif  // MOANA_PROBLEMS_HPP
