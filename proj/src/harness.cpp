#include "moana/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "moana/problems.hpp"

namespace moana {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path.string());
    }
    return out;
}

int require_positive(const json& value, const char* field) {
    if (!value.is_number_integer() || value.get<long long>() < 1) {
        throw std::invalid_argument(std::string("config field '") + field +
                                    "' must be a positive integer");
    }
    return value.get<int>();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    json doc;
    std::string trimmed = text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    if (trimmed.empty()) {
        doc = json::object();
    } else {
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& err) {
            throw std::invalid_argument(std::string("config is not valid JSON: ") + err.what());
        }
    }
    if (!doc.is_object()) {
        throw std::invalid_argument("config must be a JSON object");
    }

    ExperimentConfig config;
    for (const auto& [key, value] : doc.items()) {
        if (key == "problems") {
            if (value.is_string()) {
                config.problems = {value.get<std::string>()};
            } else if (value.is_array()) {
                for (const auto& v : value) config.problems.push_back(v.get<std::string>());
            } else {
                throw std::invalid_argument("config field 'problems' must be a string or array");
            }
        } else if (key == "population") {
            config.population = require_positive(value, "population");
        } else if (key == "iterations") {
            if (!value.is_number_integer() || value.get<long long>() < 0) {
                throw std::invalid_argument("config field 'iterations' must be >= 0");
            }
            config.iterations = value.get<int>();
        } else if (key == "capacity") {
            config.capacity = require_positive(value, "capacity");
        } else if (key == "grid_divisions") {
            config.grid_divisions = require_positive(value, "grid_divisions");
        } else if (key == "inflation") {
            if (!value.is_number() || value.get<double>() < 0.0) {
                throw std::invalid_argument("config field 'inflation' must be >= 0");
            }
            config.inflation = value.get<double>();
        } else if (key == "mutation_index") {
            if (!value.is_number() || value.get<double>() <= 0.0) {
                throw std::invalid_argument("config field 'mutation_index' must be > 0");
            }
            config.mutation_index = value.get<double>();
        } else if (key == "mutation_probability") {
            if (!value.is_number() || value.get<double>() < 0.0 || value.get<double>() > 1.0) {
                throw std::invalid_argument(
                    "config field 'mutation_probability' must lie in [0, 1]");
            }
            config.mutation_probability = value.get<double>();
        } else if (key == "remove_count") {
            config.remove_count = require_positive(value, "remove_count");
        } else if (key == "guide_cell_count") {
            config.guide_cell_count = require_positive(value, "guide_cell_count");
        } else if (key == "zdt_dimension") {
            config.zdt_dimension = require_positive(value, "zdt_dimension");
        } else if (key == "runs") {
            config.runs_per_problem = require_positive(value, "runs");
        } else if (key == "reference_front_size") {
            config.reference_front_size = require_positive(value, "reference_front_size");
            if (config.reference_front_size < 2) {
                throw std::invalid_argument("config field 'reference_front_size' must be >= 2");
            }
        } else if (key == "seed") {
            if (!value.is_number_integer() ||
                (!value.is_number_unsigned() && value.get<long long>() < 0)) {
                throw std::invalid_argument("config field 'seed' must be a nonnegative integer");
            }
            config.seed = value.get<std::uint64_t>();
        } else if (key == "out_dir") {
            if (!value.is_string()) {
                throw std::invalid_argument("config field 'out_dir' must be a string");
            }
            config.out_dir = value.get<std::string>();
        } else if (key == "igd_trace") {
            if (!value.is_boolean()) {
                throw std::invalid_argument("config field 'igd_trace' must be a boolean");
            }
            config.igd_trace = value.get<bool>();
        } else {
            throw std::invalid_argument("unknown config field '" + key + "'");
        }
    }

    for (const auto& name : config.problems) {
        make_problem(name);   // throws "problem not in registry: ..." on bad names
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::uint64_t derive_seed(std::uint64_t master, const std::string& problem, int run_index) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* data, std::size_t n) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ULL;
        }
    };
    mix(&master, sizeof master);
    mix(problem.data(), problem.size());
    const auto run = static_cast<std::uint64_t>(run_index);
    mix(&run, sizeof run);
    return h;
}

RunConfig resolve_run_config(const ExperimentConfig& config, const std::string& problem,
                             std::uint64_t seed) {
    const bool welded = problem == "welded_beam";
    RunConfig rc;
    rc.population_size = config.population.value_or(welded ? 100 : 500);
    rc.iterations = config.iterations.value_or(100);
    rc.archive_capacity = config.capacity.value_or(welded ? 100 : 500);
    rc.grid_divisions = config.grid_divisions.value_or(7);
    rc.inflation = config.inflation.value_or(0.1);
    rc.mutation.index = config.mutation_index.value_or(2.0);
    rc.mutation.per_variable_probability = config.mutation_probability.value_or(0.5);
    rc.remove_count = config.remove_count.value_or(2);
    rc.guide_cell_count = config.guide_cell_count.value_or(2);
    rc.seed = seed;
    return rc;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.problems.empty()) {
        throw std::invalid_argument("config names no problems");
    }
    const fs::path out_dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    // fail before any run starts if the directory cannot take files
    auto runs_csv = open_output(out_dir / "runs.csv");
    auto stats_csv = open_output(out_dir / "stats.csv");
    auto stats_json = open_output(out_dir / "stats.json");

    runs_csv << "problem,algorithm,run,seed,igd\n";
    stats_csv << "problem,algorithm,runs,igd_mean,igd_std,igd_best,igd_worst\n";

    ExperimentResult result;
    json stats_doc = json::object();
    stats_doc["algorithm"] = "moana";
    stats_doc["master_seed"] = config.seed;
    stats_doc["runs_per_problem"] = config.runs_per_problem;
    stats_doc["stats"] = json::array();

    for (const auto& name : config.problems) {
        const ProblemDef problem = make_problem(name, config.zdt_dimension.value_or(0));
        const ReferenceFront reference =
            sample_reference_front(problem, config.reference_front_size);

        auto fronts_csv = open_output(out_dir / (name + "_fronts.csv"));
        fronts_csv << "run,iteration";
        for (int o = 1; o <= problem.n_obj; ++o) fronts_csv << ",f" << o;
        for (int j = 1; j <= problem.dim; ++j) fronts_csv << ",x" << j;
        fronts_csv << "\n";

        auto trace_csv = open_output(out_dir / (name + "_trace.csv"));
        trace_csv << "run,iteration,archive_size\n";

        std::ofstream igd_csv;
        if (config.igd_trace) {
            igd_csv = open_output(out_dir / (name + "_igd_trace.csv"));
            igd_csv << "run,iteration,igd\n";
        }

        FrontScorer scorer;
        if (config.igd_trace) {
            scorer = [&reference](const std::vector<ObjectiveVector>& front) {
                return igd(front, reference.points).value;
            };
        }

        std::vector<double> igd_values;
        for (int run_index = 0; run_index < config.runs_per_problem; ++run_index) {
            const std::uint64_t seed = derive_seed(config.seed, name, run_index);
            const RunConfig rc = resolve_run_config(config, name, seed);
            const RunResult rr = run(problem, rc, scorer);

            std::vector<ObjectiveVector> front_objectives;
            front_objectives.reserve(rr.final_front.size());
            for (const auto& [x, f] : rr.final_front) front_objectives.push_back(f);
            const double igd_value = igd(front_objectives, reference.points).value;
            igd_values.push_back(igd_value);

            ResultRow row;
            row.problem = name;
            row.algorithm = "moana";
            row.run = run_index;
            row.seed = seed;
            row.igd_value = igd_value;
            result.rows.push_back(row);
            runs_csv << name << ",moana," << run_index << ',' << seed << ','
                     << fmt(igd_value) << '\n';

            for (const auto& [x, f] : rr.final_front) {
                fronts_csv << run_index << ',' << rc.iterations;
                for (double v : f) fronts_csv << ',' << fmt(v);
                for (double v : x) fronts_csv << ',' << fmt(v);
                fronts_csv << '\n';
            }
            for (std::size_t t = 0; t < rr.archive_size_trace.size(); ++t) {
                trace_csv << run_index << ',' << t + 1 << ',' << rr.archive_size_trace[t]
                          << '\n';
            }
            if (config.igd_trace) {
                for (std::size_t t = 0; t < rr.igd_trace.size(); ++t) {
                    igd_csv << run_index << ',' << t + 1 << ',' << fmt(rr.igd_trace[t]) << '\n';
                }
            }
        }

        ProblemStats stats;
        stats.problem = name;
        stats.algorithm = "moana";
        stats.runs = static_cast<int>(igd_values.size());
        stats.best = *std::min_element(igd_values.begin(), igd_values.end());
        stats.worst = *std::max_element(igd_values.begin(), igd_values.end());
        double sum = 0.0;
        for (double v : igd_values) sum += v;
        stats.mean = sum / stats.runs;
        double ss = 0.0;
        for (double v : igd_values) ss += (v - stats.mean) * (v - stats.mean);
        stats.stddev = stats.runs > 1 ? std::sqrt(ss / (stats.runs - 1)) : 0.0;
        result.stats.push_back(stats);

        stats_csv << name << ",moana," << stats.runs << ',' << fmt(stats.mean) << ','
                  << fmt(stats.stddev) << ',' << fmt(stats.best) << ',' << fmt(stats.worst)
                  << '\n';
        stats_doc["stats"].push_back({{"problem", name},
                                      {"runs", stats.runs},
                                      {"reference_points", reference.points.size()},
                                      {"igd_mean", stats.mean},
                                      {"igd_std", stats.stddev},
                                      {"igd_best", stats.best},
                                      {"igd_worst", stats.worst}});
    }

    stats_json << stats_doc.dump(2) << '\n';
    return result;
}

const std::vector<PublishedMean>& published_means() {
    // Mean IGD values reported in the literature for the rival optimizers on
    // these benchmarks. Inputs to reporting only, never to optimization.
    static const std::vector<PublishedMean> table = {
        {"zdt1", "mofdo", 0.06758},     {"zdt1", "mopso", 0.56374},
        {"zdt1", "nsga-iii", 15.0549},  {"zdt1", "moda", 0.07653},
        {"zdt2", "mofdo", 0.03511},     {"zdt2", "mopso", 0.33476},
        {"zdt2", "nsga-iii", 0.54915},  {"zdt2", "moda", 0.00292},
        {"zdt3", "mofdo", 0.06676},     {"zdt3", "mopso", 0.93728},
        {"zdt3", "nsga-iii", 16.2445},  {"zdt3", "moda", 0.07653},
        {"zdt4", "mofdo", 0.6802},      {"zdt4", "mopso", 1.2544},
        {"zdt4", "nsga-iii", 173.4628}, {"zdt4", "moda", 64.9628},
        {"zdt6", "mofdo", 0.35853},     {"zdt6", "mopso", 2.353},
        {"zdt6", "nsga-iii", 6.08e20},  {"zdt6", "moda", 0.11349},
        {"mmf1", "mofdo", 0.18401921},  {"mmf1", "mopso", 0.42858},
        {"mmf1", "nsga-iii", 7.0694},   {"mmf1", "moda", 0.877033},
        {"mmf2", "mofdo", 0.09108902},  {"mmf2", "mopso", 0.47075},
        {"mmf2", "nsga-iii", 5.95e52},  {"mmf2", "moda", 0.41152959},
        {"mmf3", "mofdo", 0.09121177},  {"mmf3", "mopso", 0.55775},
        {"mmf3", "nsga-iii", 1.71e53},  {"mmf3", "moda", 0.38999723},
        {"mmf4", "mofdo", 0.08195533},  {"mmf4", "mopso", 0.54681},
        {"mmf4", "nsga-iii", 11.2789},  {"mmf4", "moda", 0.00781723},
        {"mmf5", "mofdo", 0.08166825},  {"mmf5", "mopso", 0.4227},
        {"mmf5", "nsga-iii", 7.4504},   {"mmf5", "moda", 0.20697935},
        {"mmf6", "mofdo", 0.06319825},  {"mmf6", "mopso", 0.36697},
        {"mmf6", "nsga-iii", 6.3483},   {"mmf6", "moda", 6.20722767},
        {"mmf7", "mofdo", 0.14853951},  {"mmf7", "mopso", 0.26553},
        {"mmf7", "nsga-iii", 5.1419},   {"mmf7", "moda", 0.36139133},
    };
    return table;
}

std::vector<PublishedMean> load_published_means(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read published means file: " + path);
    std::vector<PublishedMean> out;
    std::string line;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_skipped) {
            header_skipped = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw std::runtime_error("published means file: expected 3 columns, got line '" +
                                     line + "'");
        }
        out.push_back({fields[0], fields[1], std::stod(fields[2])});
    }
    return out;
}

CompareReport compare(const std::vector<ProblemStats>& stats,
                      const std::vector<ResultRow>& rows,
                      const std::vector<PublishedMean>& published,
                      const std::string& out_dir) {
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);

    // keep the published algorithms in first-seen order
    std::vector<std::string> rivals;
    std::map<std::string, std::map<std::string, double>> by_problem;
    for (const auto& p : published) {
        by_problem[p.problem][p.algorithm] = p.igd_mean;
        if (std::find(rivals.begin(), rivals.end(), p.algorithm) == rivals.end()) {
            rivals.push_back(p.algorithm);
        }
    }

    CompareReport report;
    std::vector<std::string> functions;
    std::vector<std::vector<double>> scores;
    for (const auto& s : stats) {
        const auto found = by_problem.find(s.problem);
        if (found == by_problem.end()) {
            report.notes.push_back("no published means for '" + s.problem + "'; row skipped");
            continue;
        }
        std::vector<double> row = {s.mean};
        bool complete = true;
        for (const auto& rival : rivals) {
            const auto entry = found->second.find(rival);
            if (entry == found->second.end()) {
                complete = false;
                break;
            }
            row.push_back(entry->second);
        }
        if (!complete) {
            report.notes.push_back("incomplete published row for '" + s.problem +
                                   "'; row skipped");
            continue;
        }
        functions.push_back(s.problem);
        scores.push_back(std::move(row));
    }

    std::vector<std::string> algorithms = {"moana"};
    algorithms.insert(algorithms.end(), rivals.begin(), rivals.end());
    report.table = rank_table(functions, algorithms, scores);

    if (algorithms.size() < 3) {
        report.notes.push_back("Friedman test skipped: fewer than 3 algorithm columns");
    } else if (functions.size() < 2) {
        report.notes.push_back("Friedman test skipped: fewer than 2 functions");
    } else {
        report.friedman = friedman(report.table);
    }

    // per-run samples against each published mean; approximate because the
    // published per-run samples are unavailable
    std::map<std::string, std::vector<double>> run_samples;
    for (const auto& r : rows) run_samples[r.problem].push_back(r.igd_value);
    for (const auto& name : functions) {
        const auto& samples = run_samples[name];
        if (samples.size() < 10) continue;
        for (const auto& rival : rivals) {
            const std::vector<double> constant(samples.size(), by_problem[name][rival]);
            report.wilcoxon.push_back({name, rival, wilcoxon_rank_sum(samples, constant)});
        }
    }

    auto rank_csv = open_output(dir / "rank_table.csv");
    rank_csv << "function";
    for (const auto& a : algorithms) rank_csv << ',' << a;
    rank_csv << '\n';
    for (std::size_t i = 0; i < report.table.functions.size(); ++i) {
        rank_csv << report.table.functions[i];
        for (int r : report.table.ranks[i]) rank_csv << ',' << r;
        rank_csv << '\n';
    }
    rank_csv << "total";
    for (int s : report.table.column_sums) rank_csv << ',' << s;
    rank_csv << '\n';

    auto wilcoxon_csv = open_output(dir / "wilcoxon.csv");
    wilcoxon_csv << "problem,versus,p_value\n";
    for (const auto& w : report.wilcoxon) {
        wilcoxon_csv << w.problem << ',' << w.versus << ',' << fmt(w.p_value) << '\n';
    }

    json doc = json::object();
    doc["algorithms"] = algorithms;
    doc["functions"] = report.table.functions;
    doc["ranks"] = report.table.ranks;
    doc["rank_sums"] = report.table.column_sums;
    if (report.friedman) {
        doc["friedman"] = {{"chi_square", report.friedman->chi_square},
                           {"p_value", report.friedman->p_value},
                           {"significant_at_0_05", report.friedman->significant_at_0_05}};
    }
    doc["wilcoxon"] = json::array();
    for (const auto& w : report.wilcoxon) {
        doc["wilcoxon"].push_back(
            {{"problem", w.problem}, {"versus", w.versus}, {"p_value", w.p_value}});
    }
    doc["notes"] = report.notes;
    auto report_json = open_output(dir / "compare_report.json");
    report_json << doc.dump(2) << '\n';

    return report;
}

std::vector<ProblemStats> load_stats_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read stats file: " + path);
    std::vector<ProblemStats> out;
    std::string line;
    std::getline(in, line);   // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 7) {
            throw std::runtime_error("stats file: expected 7 columns, got line '" + line + "'");
        }
        ProblemStats s;
        s.problem = fields[0];
        s.algorithm = fields[1];
        s.runs = std::stoi(fields[2]);
        s.mean = std::stod(fields[3]);
        s.stddev = std::stod(fields[4]);
        s.best = std::stod(fields[5]);
        s.worst = std::stod(fields[6]);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<ResultRow> load_runs_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read runs file: " + path);
    std::vector<ResultRow> out;
    std::string line;
    std::getline(in, line);   // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 5) {
            throw std::runtime_error("runs file: expected 5 columns, got line '" + line + "'");
        }
        ResultRow r;
        r.problem = fields[0];
        r.algorithm = fields[1];
        r.run = std::stoi(fields[2]);
        r.seed = std::stoull(fields[3]);
        r.igd_value = std::stod(fields[4]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace moana
