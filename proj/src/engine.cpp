#include "moana/engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace moana {

namespace {

constexpr double kTendencyEps = 1e-12;

bool nearly_equal(const DecisionVector& a, const DecisionVector& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (std::fabs(a[j] - b[j]) >= kPositionTol) return false;
    }
    return true;
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

ConstraintReport evaluate_constraints(const ProblemDef& problem, const DecisionVector& x) {
    if (problem.constraints) return problem.constraints(x);
    return ConstraintReport{};
}

ObjectiveVector checked_evaluate(const ProblemDef& problem, const DecisionVector& x,
                                 int ant_index) {
    ObjectiveVector f = problem.evaluate(x);
    if (!all_finite(f)) {
        throw std::runtime_error("evaluator returned a non-finite objective for ant " +
                                 std::to_string(ant_index));
    }
    return f;
}

void validate(const RunConfig& config) {
    if (config.population_size < 1) throw std::invalid_argument("run: population_size must be >= 1");
    if (config.iterations < 0) throw std::invalid_argument("run: iterations must be >= 0");
    if (config.archive_capacity < 1) throw std::invalid_argument("run: archive_capacity must be >= 1");
    if (config.grid_divisions < 1) throw std::invalid_argument("run: grid_divisions must be >= 1");
    if (config.inflation < 0.0) throw std::invalid_argument("run: inflation must be >= 0");
    if (config.mutation.index <= 0.0) throw std::invalid_argument("run: mutation index must be > 0");
    if (config.mutation.per_variable_probability < 0.0 ||
        config.mutation.per_variable_probability > 1.0) {
        throw std::invalid_argument("run: mutation probability must lie in [0, 1]");
    }
    if (config.remove_count < 1) throw std::invalid_argument("run: remove_count must be >= 1");
    if (config.guide_cell_count < 1) throw std::invalid_argument("run: guide_cell_count must be >= 1");
}

}  // namespace

double tendency_sum(const DecisionVector& pos_a, const DecisionVector& pos_b,
                    const ObjectiveVector& fit_a, const ObjectiveVector& fit_b) {
    double dist_sq = 0.0;
    for (std::size_t j = 0; j < pos_a.size(); ++j) {
        const double d = pos_a[j] - pos_b[j];
        dist_sq += d * d;
    }
    double sum = 0.0;
    for (std::size_t o = 0; o < fit_a.size(); ++o) {
        const double df = fit_a[o] - fit_b[o];
        sum += std::sqrt(std::max(0.0, dist_sq - df * df));
    }
    return sum;
}

double deposition_weight(double tendency, double tendency_previous, double r) {
    if (tendency_previous < kTendencyEps) return r;
    return r * (tendency / tendency_previous);
}

MoveBranch classify_move(const WorkerAnt& ant, const DecisionVector& guide) {
    if (nearly_equal(ant.position, guide)) return MoveBranch::self_guide;
    if (nearly_equal(ant.position, ant.previous_position)) return MoveBranch::stationary;
    return MoveBranch::toward_guide;
}

DecisionVector delta_position(const WorkerAnt& ant, const DecisionVector& guide,
                              double r, double dw) {
    const std::size_t n = ant.position.size();
    DecisionVector delta(n);
    switch (classify_move(ant, guide)) {
        case MoveBranch::self_guide:
            for (std::size_t j = 0; j < n; ++j) delta[j] = r * ant.position[j];
            break;
        case MoveBranch::stationary:
            for (std::size_t j = 0; j < n; ++j) delta[j] = r * (guide[j] - ant.position[j]);
            break;
        case MoveBranch::toward_guide:
            for (std::size_t j = 0; j < n; ++j) delta[j] = dw * (guide[j] - ant.position[j]);
            break;
    }
    return delta;
}

double mutation_alpha(double v, double q) {
    const double e = 1.0 / (q + 1.0);
    if (v < 0.5) return std::pow(2.0 * v, e) - 1.0;
    return 1.0 - std::pow(2.0 * (1.0 - v), e);
}

double mutation_beta_max(double s, double lower, double upper) {
    return std::max(s - lower, upper - s);
}

DecisionVector polynomial_mutation(const DecisionVector& s,
                                   const std::vector<std::pair<double, double>>& bounds,
                                   const MutationParams& params, std::mt19937_64& rng) {
    if (!within_bounds(s, bounds)) {
        throw std::invalid_argument("polynomial_mutation: input is out of bounds");
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    DecisionVector out = s;
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (unit(rng) >= params.per_variable_probability) continue;
        const double v = unit(rng);
        const double alpha = mutation_alpha(v, params.index);
        const double beta = mutation_beta_max(out[j], bounds[j].first, bounds[j].second);
        out[j] = std::clamp(out[j] + alpha * beta, bounds[j].first, bounds[j].second);
    }
    return out;
}

long step(std::vector<WorkerAnt>& population, Archive& archive,
          const ProblemDef& problem, const RunConfig& config, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> walk(-1.0, 1.0);
    long evaluations = 0;

    for (std::size_t i = 0; i < population.size(); ++i) {
        WorkerAnt& ant = population[i];
        const ArchiveMember guide = archive.select_guide(rng);
        const double r = walk(rng);

        const MoveBranch branch = classify_move(ant, guide.decision);
        double dw = 0.0;
        bool dw_used = false;
        if (branch == MoveBranch::toward_guide) {
            dw_used = true;
            if (ant.reuse_dw) {
                dw = ant.stored_dw;
                ant.reuse_dw = false;
            } else {
                const double tendency =
                    tendency_sum(guide.decision, ant.position, guide.objectives, ant.fitness);
                const double tendency_previous =
                    tendency_sum(guide.decision, ant.previous_position,
                                 guide.objectives, ant.previous_fitness);
                dw = deposition_weight(tendency, tendency_previous, r);
            }
        }

        const DecisionVector delta = delta_position(ant, guide.decision, r, dw);
        DecisionVector candidate = ant.position;
        for (std::size_t j = 0; j < candidate.size(); ++j) candidate[j] += delta[j];
        candidate = clamp_to_bounds(std::move(candidate), problem.bounds);

        const ObjectiveVector candidate_fitness =
            checked_evaluate(problem, candidate, static_cast<int>(i));
        ++evaluations;
        const ConstraintReport candidate_report = evaluate_constraints(problem, candidate);

        if (constrained_dominates(candidate_fitness, candidate_report, ant.fitness, ant.report)) {
            ant.previous_position = std::move(ant.position);
            ant.previous_fitness = std::move(ant.fitness);
            ant.previous_report = std::move(ant.report);
            ant.position = std::move(candidate);
            ant.fitness = candidate_fitness;
            ant.report = candidate_report;
            if (dw_used) ant.stored_dw = dw;
        } else {
            // the ant stays put; its stored dw feeds the next toward-guide step
            ant.reuse_dw = true;
            // a declined candidate is still an evaluated solution and stays
            // eligible for the archive
            archive.try_insert(candidate, candidate_fitness, rng,
                               candidate_report.total_violation);
        }

        const DecisionVector mutated =
            polynomial_mutation(ant.position, problem.bounds, config.mutation, rng);
        const ObjectiveVector mutated_fitness =
            checked_evaluate(problem, mutated, static_cast<int>(i));
        ++evaluations;
        const ConstraintReport mutated_report = evaluate_constraints(problem, mutated);

        archive.try_insert(mutated, mutated_fitness, rng, mutated_report.total_violation);
        archive.try_insert(ant.position, ant.fitness, rng, ant.report.total_violation);
    }

    archive.rebuild_grid();
    return evaluations;
}

RunResult run(const ProblemDef& problem, const RunConfig& config, const FrontScorer& scorer) {
    validate(config);
    for (const auto& [lo, hi] : problem.bounds) {
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
            throw std::invalid_argument("run: problem bounds must be finite with lower < upper");
        }
    }

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> walk(-1.0, 1.0);

    std::vector<WorkerAnt> population(config.population_size);
    for (int i = 0; i < config.population_size; ++i) {
        WorkerAnt& ant = population[i];
        ant.position.resize(problem.dim);
        for (int j = 0; j < problem.dim; ++j) {
            std::uniform_real_distribution<double> coord(problem.bounds[j].first,
                                                         problem.bounds[j].second);
            ant.position[j] = coord(rng);
        }
        ant.previous_position = ant.position;
        try {
            ant.fitness = checked_evaluate(problem, ant.position, i);
        } catch (const std::runtime_error& err) {
            throw std::runtime_error(std::string(err.what()) + " (initialization)");
        }
        ant.report = evaluate_constraints(problem, ant.position);
        ant.previous_fitness = ant.fitness;
        ant.previous_report = ant.report;
        ant.stored_dw = walk(rng);
    }

    RunResult result;
    result.config_echo = config;
    result.seed = config.seed;
    result.evaluations = config.population_size;

    Archive archive(config.archive_capacity, config.grid_divisions, config.inflation,
                    config.remove_count, config.guide_cell_count);
    for (const auto& ant : population) {
        archive.try_insert(ant.position, ant.fitness, rng, ant.report.total_violation);
    }
    archive.rebuild_grid();

    result.archive_size_trace.reserve(config.iterations);
    for (int t = 0; t < config.iterations; ++t) {
        try {
            result.evaluations += step(population, archive, problem, config, rng);
        } catch (const std::runtime_error& err) {
            throw std::runtime_error(std::string(err.what()) + " (iteration " +
                                     std::to_string(t) + ")");
        }
        result.archive_size_trace.push_back(archive.size());
        if (scorer) result.igd_trace.push_back(scorer(archive.objectives()));
    }

    result.final_front.reserve(archive.members().size());
    for (const auto& m : archive.members()) {
        result.final_front.emplace_back(m.decision, m.objectives);
    }
    return result;
}

}  // namespace moana
