/**
 * @file engine.hpp
 * @brief The multi-objective ant nesting optimizer: deposition-weight
 *        dynamics, position updates, polynomial mutation, and the main loop.
 */

#ifndef MOANA_ENGINE_HPP
#define MOANA_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "moana/archive.hpp"
#include "moana/core.hpp"

namespace moana {

/// A search agent: current and previous positions with their fitnesses and
/// the last accepted deposition weight.
struct WorkerAnt {
    DecisionVector position;
    DecisionVector previous_position;
    ObjectiveVector fitness;
    ObjectiveVector previous_fitness;
    ConstraintReport report;
    ConstraintReport previous_report;
    double stored_dw = 0.0;
    bool reuse_dw = false;   // set after a rejected move; consumed by the next toward-guide step
};

struct MutationParams {
    double index = 2.0;                     // distribution index q
    double per_variable_probability = 0.5;
};

struct RunConfig {
    int population_size = 500;
    int iterations = 100;
    int archive_capacity = 500;
    int grid_divisions = 7;
    double inflation = 0.1;
    MutationParams mutation;
    int remove_count = 2;
    int guide_cell_count = 2;
    std::uint64_t seed = 0;
};

struct RunResult {
    std::vector<std::pair<DecisionVector, ObjectiveVector>> final_front;
    std::vector<int> archive_size_trace;    // one entry per iteration
    std::vector<double> igd_trace;          // filled only when a front scorer is supplied
    RunConfig config_echo;
    std::uint64_t seed = 0;
    long evaluations = 0;                   // objective evaluations consumed by the run
};

/// Optional per-iteration score of the archive contents (e.g. IGD against a
/// reference front).
using FrontScorer = std::function<double(const std::vector<ObjectiveVector>&)>;

/// Sum over objectives of sqrt(max(0, D^2 - df_o^2)) where D is the
/// decision-space distance between the positions and df_o the per-objective
/// fitness gap. The clamp resolves negative radicands.
double tendency_sum(const DecisionVector& pos_a, const DecisionVector& pos_b,
                    const ObjectiveVector& fit_a, const ObjectiveVector& fit_b);

/// r * (T / T_previous); the ratio is taken as 1 when T_previous vanishes,
/// so the result degrades to the bare random walk factor r.
double deposition_weight(double tendency, double tendency_previous, double r);

enum class MoveBranch {
    self_guide,     // the ant is the guide: dX = r * x
    stationary,     // position equals previous position: dX = r * (guide - x)
    toward_guide,   // dX = dw * (guide - x)
};

/// Branch the position update takes for this ant/guide pair (componentwise
/// position comparisons within kPositionTol).
MoveBranch classify_move(const WorkerAnt& ant, const DecisionVector& guide);

/// Position change for one ant following the branch rules above.
DecisionVector delta_position(const WorkerAnt& ant, const DecisionVector& guide,
                              double r, double dw);

/// Mutation step size for a uniform draw v in [0,1) and distribution index q.
/// alpha(0) = -1, alpha(0.5) = 0, alpha(v -> 1) -> 1.
double mutation_alpha(double v, double q);

/// Largest allowable perturbation for a variable at s within [lower, upper].
double mutation_beta_max(double s, double lower, double upper);

/// Perturbs each variable independently with the configured probability and
/// clamps the result into the box. Throws when s is out of bounds.
DecisionVector polynomial_mutation(const DecisionVector& s,
                                   const std::vector<std::pair<double, double>>& bounds,
                                   const MutationParams& params, std::mt19937_64& rng);

/**
 * One iteration over the whole population, in index order: select a guide,
 * compute the move, accept it only if the candidate beats the ant's current
 * fitness, then offer a mutated copy and the ant's current point to the
 * archive. Grid indices are refreshed once afterwards.
 *
 * @return number of objective evaluations consumed.
 */
long step(std::vector<WorkerAnt>& population, Archive& archive,
          const ProblemDef& problem, const RunConfig& config, std::mt19937_64& rng);

/// Full optimization run. Deterministic: equal seed and config reproduce the
/// result bit for bit.
RunResult run(const ProblemDef& problem, const RunConfig& config,
              const FrontScorer& scorer = nullptr);

}  // namespace moana

#endif  // MOANA_ENGINE_HPP
