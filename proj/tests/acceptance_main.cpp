// Acceptance suite: exercises the full pipeline against its quantitative
// targets and prints one PASS/FAIL line per criterion. Exit code equals the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "moana/engine.hpp"
#include "moana/harness.hpp"
#include "moana/metrics.hpp"
#include "moana/problems.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace moana;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

constexpr std::uint64_t kMasterSeed = 20240601;

// --- criteria 1 and 2: ZDT reproduction through the experiment pipeline ---

void zdt_reproduction(int criterion, const std::string& problem, double threshold,
                      double time_limit_s) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentConfig config;
    config.problems = {problem};
    config.runs_per_problem = 10;
    config.reference_front_size = 1000;
    config.seed = kMasterSeed;
    const fs::path dir = fs::temp_directory_path() / ("moana_accept_" + problem);
    fs::remove_all(dir);
    config.out_dir = dir.string();

    const ExperimentResult result = run_experiment(config);
    const double mean = result.stats.at(0).mean;
    const double secs = elapsed_seconds(start);
    fs::remove_all(dir);

    std::ostringstream detail;
    detail << problem << " mean IGD " << mean << " (threshold " << threshold
           << ", 10 runs, population 500, 100 iterations, " << secs << " s)";
    bool pass = mean <= threshold;
    if (time_limit_s > 0.0 && secs > time_limit_s) {
        pass = false;
        detail << " [exceeded " << time_limit_s << " s budget]";
    }
    report(criterion, pass, detail.str());
}

// --- criterion 3: MMF4 with the oracle-sampled reference front ---

void mmf4_reproduction() {
    const ProblemDef problem = make_mmf(4);
    const ReferenceFront reference = sample_reference_front(problem, 1000);
    if (reference.points.size() < 500) {
        report(3, false,
               "mmf4 reference front too small: " + std::to_string(reference.points.size()) +
                   " < 500 points");
        return;
    }

    double sum = 0.0;
    for (int run_index = 0; run_index < 10; ++run_index) {
        RunConfig rc;
        rc.seed = derive_seed(kMasterSeed, "mmf4", run_index);
        const RunResult rr = run(problem, rc);
        std::vector<ObjectiveVector> front;
        for (const auto& [x, f] : rr.final_front) front.push_back(f);
        sum += igd(front, reference.points).value;
    }
    const double mean = sum / 10.0;
    std::ostringstream detail;
    detail << "mmf4 mean IGD " << mean << " (threshold 0.08, reference "
           << reference.points.size() << " oracle points)";
    report(3, mean <= 0.08, detail.str());
}

// --- criterion 4: welded beam feasibility, fill level, and spread ---

void welded_beam_design() {
    const ProblemDef problem = make_welded_beam();
    RunConfig rc;
    rc.population_size = 100;
    rc.iterations = 100;
    rc.archive_capacity = 100;
    rc.seed = derive_seed(kMasterSeed, "welded_beam", 0);
    const RunResult rr = run(problem, rc);

    double worst_slack = std::numeric_limits<double>::infinity();
    double f1_min = std::numeric_limits<double>::infinity();
    double f1_max = -f1_min;
    for (const auto& [x, f] : rr.final_front) {
        const ConstraintReport report = problem.constraints(x);
        for (double g : report.values) worst_slack = std::min(worst_slack, g);
        f1_min = std::min(f1_min, f[0]);
        f1_max = std::max(f1_max, f[0]);
    }
    const std::size_t size = rr.final_front.size();
    const double span = f1_max / f1_min;

    std::ostringstream detail;
    detail << "welded beam: archive " << size << "/100, worst slack " << worst_slack
           << ", cost span " << span << "x";
    const bool pass = size >= 90 && worst_slack >= -1e-6 && span >= 5.0;
    report(4, pass, detail.str());
}

// --- criterion 5: archive vs the brute-force dominance oracle ---

void archive_oracle_equivalence() {
    std::mt19937_64 rng(kMasterSeed);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::uniform_int_distribution<int> length(1, 200);
    std::uniform_int_distribution<int> objectives(2, 3);

    int bad_sequences = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int capacity = (trial % 2 == 0) ? 5 : 20;
        const int n_obj = objectives(rng);
        Archive archive(capacity, 5, 0.1, 2, 2);
        std::vector<oracle::Point> offered;
        const int n = length(rng);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            ObjectiveVector f(n_obj);
            for (int o = 0; o < n_obj; ++o) f[o] = coord(rng);
            offered.push_back(f);
            archive.try_insert({double(i)}, f, rng);
            if (archive.size() > capacity) ok = false;
        }
        const auto truth = oracle::non_dominated(offered);
        std::vector<oracle::Point> members;
        for (const auto& m : archive.members()) members.push_back(m.objectives);
        if (oracle::has_dominated_pair(members)) ok = false;
        for (const auto& m : members) {
            if (!oracle::contains(truth, m)) ok = false;
        }
        if (!ok) ++bad_sequences;
    }
    std::ostringstream detail;
    detail << "archive oracle equivalence: " << bad_sequences
           << " failing sequences out of 1000";
    report(5, bad_sequences == 0, detail.str());
}

// --- criterion 6: polynomial mutation properties ---

void mutation_properties() {
    const double q = 2.0;
    int violations = 0;
    if (mutation_alpha(0.5, q) != 0.0) ++violations;

    std::mt19937_64 rng(kMasterSeed + 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100000; ++i) {
        const double a = mutation_alpha(unit(rng), q);
        if (a < -1.0 || a > 1.0) ++violations;
    }

    const std::vector<std::pair<double, double>> bounds = {{0.0, 1.0}, {-5.0, 5.0}, {2.0, 3.0}};
    const DecisionVector s = {0.25, 4.0, 2.0};
    MutationParams always{q, 1.0};
    for (int i = 0; i < 100000 / 3; ++i) {
        const DecisionVector m = polynomial_mutation(s, bounds, always, rng);
        if (!within_bounds(m, bounds)) ++violations;
    }

    MutationParams off{q, 0.0};
    for (int i = 0; i < 1000; ++i) {
        if (polynomial_mutation(s, bounds, off, rng) != s) ++violations;
    }

    std::ostringstream detail;
    detail << "polynomial mutation: " << violations
           << " violations across alpha endpoints, range, bounds, and identity";
    report(6, violations == 0, detail.str());
}

// --- criterion 7: metrics oracles ---

void metrics_oracles() {
    int bad = 0;
    std::ostringstream detail;

    const std::vector<ObjectiveVector> any = {{0.2, 0.4}, {0.9, 0.1}};
    if (std::fabs(igd(any, any).value) > 1e-12) ++bad;
    if (std::fabs(igd({{3, 4}}, {{0, 0}}).value - 5.0) > 1e-12) ++bad;
    if (std::fabs(igd({{0, 0}}, {{0, 0}, {1, 1}}).value - std::sqrt(2.0) / 2.0) > 1e-12) ++bad;

    if (std::fabs(wilcoxon_rank_sum({1, 2}, {3, 4}) - 2.0 / 6.0) > 1e-9) ++bad;
    if (std::fabs(wilcoxon_rank_sum({1, 2, 3}, {4, 5, 6}) - 0.1) > 1e-9) ++bad;

    const FriedmanResult fr = friedman({27, 41, 61, 47, 77}, 17);
    const double hand = 12.0 / (17.0 * 5.0 * 6.0) *
                            (27.0 * 27 + 41.0 * 41 + 61.0 * 61 + 47.0 * 47 + 77.0 * 77) -
                        3.0 * 17.0 * 6.0;
    if (std::fabs(fr.chi_square - hand) > 1e-9) ++bad;
    if (!fr.significant_at_0_05) ++bad;
    if (chi_square_significant(9.488, 5)) ++bad;   // boundary stays insignificant

    detail << "metrics oracles: " << bad << " mismatches (igd exact, rank-sum enumerations, "
           << "friedman chi-square " << fr.chi_square << " vs hand " << hand << ")";
    report(7, bad == 0, detail.str());
}

// --- criterion 8: byte-identical experiment reruns ---

std::uint64_t file_hash(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

void determinism() {
    ExperimentConfig config;
    config.problems = {"zdt3", "welded_beam"};
    config.population = 60;
    config.iterations = 30;
    config.capacity = 60;
    config.runs_per_problem = 2;
    config.reference_front_size = 200;
    config.seed = kMasterSeed;
    config.igd_trace = true;

    const fs::path dir_a = fs::temp_directory_path() / "moana_accept_det_a";
    const fs::path dir_b = fs::temp_directory_path() / "moana_accept_det_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    config.out_dir = dir_a.string();
    run_experiment(config);
    config.out_dir = dir_b.string();
    run_experiment(config);

    int files = 0, mismatches = 0;
    for (const auto& entry : fs::directory_iterator(dir_a)) {
        ++files;
        if (file_hash(entry.path()) != file_hash(dir_b / entry.path().filename())) {
            ++mismatches;
        }
    }
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    std::ostringstream detail;
    detail << "determinism: " << mismatches << " hash mismatches across " << files
           << " emitted files over two identical reruns";
    report(8, files > 0 && mismatches == 0, detail.str());
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();

    zdt_reproduction(1, "zdt1", 0.15, 180.0);
    zdt_reproduction(2, "zdt2", 0.06, 0.0);
    mmf4_reproduction();
    welded_beam_design();
    archive_oracle_equivalence();
    mutation_properties();
    metrics_oracles();
    determinism();

    std::printf("%d/8 criteria passed in %.1f s\n", 8 - failures, elapsed_seconds(start));
    return failures;
}
