// Command-line front end: execute seeded experiment batches, emit reference
// fronts, and compare aggregated results against published numbers.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "moana/harness.hpp"
#include "moana/problems.hpp"

namespace {

int cmd_run(const std::string& config_path, const CLI::App& cmd) {
    moana::ExperimentConfig config = moana::load_config(config_path);
    if (const auto* opt = cmd.get_option("--seed"); opt->count() > 0) {
        config.seed = opt->as<std::uint64_t>();
    }
    if (const auto* opt = cmd.get_option("--out-dir"); opt->count() > 0) {
        config.out_dir = opt->as<std::string>();
    }
    if (const auto* opt = cmd.get_option("--runs"); opt->count() > 0) {
        config.runs_per_problem = opt->as<int>();
    }
    if (const auto* opt = cmd.get_option("--iterations"); opt->count() > 0) {
        config.iterations = opt->as<int>();
    }
    if (const auto* opt = cmd.get_option("--population"); opt->count() > 0) {
        config.population = opt->as<int>();
    }
    if (const auto* opt = cmd.get_option("--capacity"); opt->count() > 0) {
        config.capacity = opt->as<int>();
    }

    const moana::ExperimentResult result = moana::run_experiment(config);
    for (const auto& s : result.stats) {
        std::cout << s.problem << ": runs=" << s.runs << " igd_mean=" << s.mean
                  << " igd_std=" << s.stddev << " igd_best=" << s.best
                  << " igd_worst=" << s.worst << '\n';
    }
    std::cout << "outputs written to " << config.out_dir << '\n';
    return 0;
}

int cmd_fronts(const std::string& problem_name, int count, const std::string& out_path) {
    const moana::ProblemDef problem = moana::make_problem(problem_name);
    const moana::ReferenceFront front = moana::sample_reference_front(problem, count);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot open output file: " + out_path);
        out = &file;
    }
    for (int o = 1; o <= problem.n_obj; ++o) (*out) << (o > 1 ? "," : "") << 'f' << o;
    (*out) << '\n';
    char buf[40];
    for (const auto& p : front.points) {
        for (std::size_t o = 0; o < p.size(); ++o) {
            std::snprintf(buf, sizeof buf, "%.17g", p[o]);
            (*out) << (o > 0 ? "," : "") << buf;
        }
        (*out) << '\n';
    }
    return 0;
}

int cmd_compare(const std::string& stats_path, const std::string& runs_path,
                const std::string& published_path, const std::string& out_dir) {
    const auto stats = moana::load_stats_csv(stats_path);
    std::vector<moana::ResultRow> rows;
    if (!runs_path.empty()) rows = moana::load_runs_csv(runs_path);
    const auto published = published_path.empty() ? moana::published_means()
                                                  : moana::load_published_means(published_path);

    const moana::CompareReport report = moana::compare(stats, rows, published, out_dir);
    for (std::size_t i = 0; i < report.table.functions.size(); ++i) {
        std::cout << report.table.functions[i] << " ranks:";
        for (int r : report.table.ranks[i]) std::cout << ' ' << r;
        std::cout << '\n';
    }
    if (report.friedman) {
        std::cout << "friedman chi_square=" << report.friedman->chi_square
                  << " p=" << report.friedman->p_value
                  << " significant=" << (report.friedman->significant_at_0_05 ? "yes" : "no")
                  << '\n';
    }
    for (const auto& note : report.notes) std::cout << "note: " << note << '\n';
    std::cout << "report written to " << out_dir << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-objective ant nesting optimizer benchmark harness"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "execute an experiment config");
    run_cmd->add_option("config", config_path, "JSON experiment config")->required();
    run_cmd->add_option("--seed", "master seed override");
    run_cmd->add_option("--out-dir", "output directory override");
    run_cmd->add_option("--runs", "runs per problem override");
    run_cmd->add_option("--iterations", "iteration count override");
    run_cmd->add_option("--population", "population size override");
    run_cmd->add_option("--capacity", "archive capacity override");

    std::string problem_name, fronts_out;
    int fronts_count = 1000;
    auto* fronts_cmd = app.add_subcommand("fronts", "emit a reference front CSV");
    fronts_cmd->add_option("problem", problem_name, "problem name, e.g. zdt1")->required();
    fronts_cmd->add_option("--count", fronts_count, "number of points")->required();
    fronts_cmd->add_option("--out", fronts_out, "output file (stdout when omitted)");

    std::string stats_path, runs_path, published_path, compare_out = "compare_out";
    auto* compare_cmd = app.add_subcommand("compare", "rank results against published numbers");
    compare_cmd->add_option("stats", stats_path, "stats.csv from a run")->required();
    compare_cmd->add_option("--runs-csv", runs_path, "runs.csv for rank-sum p-values");
    compare_cmd->add_option("--published", published_path,
                            "override the built-in published means table");
    compare_cmd->add_option("--out-dir", compare_out, "report output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(config_path, *run_cmd);
        if (fronts_cmd->parsed()) return cmd_fronts(problem_name, fronts_count, fronts_out);
        if (compare_cmd->parsed()) {
            return cmd_compare(stats_path, runs_path, published_path, compare_out);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
