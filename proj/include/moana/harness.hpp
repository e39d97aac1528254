/**
 * @file harness.hpp
 * @brief Experiment front end: parse configs, execute seeded batches of
 *        runs, aggregate the quality indicator, and emit CSV/JSON artifacts.
 *
 * Re-running an experiment with the same config reproduces every emitted
 * file byte for byte.
 */

#ifndef MOANA_HARNESS_HPP
#define MOANA_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moana/engine.hpp"
#include "moana/metrics.hpp"

namespace moana {

struct ExperimentConfig {
    std::vector<std::string> problems;
    // unset fields fall back to the standard parameter block
    // (population 500, iterations 100, capacity 500, grid 7, inflation 0.1;
    // the welded beam runs with population 100 and capacity 100)
    std::optional<int> population;
    std::optional<int> iterations;
    std::optional<int> capacity;
    std::optional<int> grid_divisions;
    std::optional<double> inflation;
    std::optional<double> mutation_index;
    std::optional<double> mutation_probability;
    std::optional<int> remove_count;
    std::optional<int> guide_cell_count;
    std::optional<int> zdt_dimension;
    int runs_per_problem = 10;
    int reference_front_size = 1000;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    bool igd_trace = false;
};

/// Per-run outcome.
struct ResultRow {
    std::string problem;
    std::string algorithm;
    int run = 0;
    std::uint64_t seed = 0;
    double igd_value = 0.0;
};

/// Per-problem aggregate over all runs.
struct ProblemStats {
    std::string problem;
    std::string algorithm;
    int runs = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double best = 0.0;
    double worst = 0.0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<ProblemStats> stats;
};

/// Mean indicator value reported in the literature for a rival algorithm.
struct PublishedMean {
    std::string problem;
    std::string algorithm;
    double igd_mean = 0.0;
};

/// Parses a JSON config document (grammar documented in the README). An
/// empty document yields all defaults. Unknown keys, unknown problem names,
/// and nonpositive sizes raise errors naming the offending field.
ExperimentConfig parse_config(const std::string& text);

/// Reads and parses a config file.
ExperimentConfig load_config(const std::string& path);

/// Stable 64-bit child seed for a (master seed, problem, run index) job.
std::uint64_t derive_seed(std::uint64_t master, const std::string& problem, int run_index);

/// Engine configuration for one problem under this experiment.
RunConfig resolve_run_config(const ExperimentConfig& config, const std::string& problem,
                             std::uint64_t seed);

/**
 * Executes every (problem, run) job, scoring each final front against the
 * problem's reference front, and writes per-problem front and trace CSVs
 * plus runs.csv, stats.csv, and a stats.json mirror into the output
 * directory.
 */
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Comparison constants baked in from the published result tables.
const std::vector<PublishedMean>& published_means();

/// Comparison constants from a CSV file (problem,algorithm,igd_mean; '#'
/// lines are comments).
std::vector<PublishedMean> load_published_means(const std::string& path);

struct WilcoxonRow {
    std::string problem;
    std::string versus;
    double p_value = 1.0;
};

struct CompareReport {
    RankTable table;
    std::optional<FriedmanResult> friedman;
    std::vector<WilcoxonRow> wilcoxon;
    std::vector<std::string> notes;
};

/**
 * Ranks this library's mean indicator values against the published
 * constants, runs the Friedman test over the rank table (skipped with a
 * notice below three algorithm columns), adds rank-sum p-values against each
 * published mean when at least ten run samples exist, and writes
 * rank_table.csv, wilcoxon.csv, and compare_report.json into out_dir.
 */
CompareReport compare(const std::vector<ProblemStats>& stats,
                      const std::vector<ResultRow>& rows,
                      const std::vector<PublishedMean>& published,
                      const std::string& out_dir);

/// Reads stats.csv / runs.csv files produced by run_experiment.
std::vector<ProblemStats> load_stats_csv(const std::string& path);
std::vector<ResultRow> load_runs_csv(const std::string& path);

}  // namespace moana

#endif  // MOANA_HARNESS_HPP
