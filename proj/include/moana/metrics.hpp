/**
 * @file metrics.hpp
 * @brief Quality indicator and nonparametric statistics: the inverted
 *        generational distance, the Wilcoxon rank-sum test, the Friedman
 *        test, and competition-style ranking tables.
 */

#ifndef MOANA_METRICS_HPP
#define MOANA_METRICS_HPP

#include <string>
#include <vector>

#include "moana/core.hpp"

namespace moana {

struct IgdSample {
    double value = 0.0;
    int front_size = 0;
    int reference_size = 0;
};

/**
 * Distance of a reference set to a front. The default aggregates as
 * sqrt(sum of squared nearest distances) / n; the conventional
 * mean-of-distances form is available behind the flag.
 */
IgdSample igd(const std::vector<ObjectiveVector>& front,
              const std::vector<ObjectiveVector>& reference, bool root_of_sum_form = true);

/**
 * Two-sided Wilcoxon rank-sum p-value. Ties take midranks; pooled samples of
 * up to 20 observations are enumerated exactly, larger ones use the normal
 * approximation with tie-corrected variance and continuity correction.
 * Requires at least two observations per sample. Identical pooled values
 * yield p = 1.
 */
double wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b);

struct RankTable {
    std::vector<std::string> functions;
    std::vector<std::string> algorithms;
    std::vector<std::vector<int>> ranks;   // one row per function, 1 = best
    std::vector<int> column_sums;
};

/// Ranks algorithms per function by mean score (competition ranking: ties
/// share the smaller rank and the following rank is skipped).
RankTable rank_table(const std::vector<std::string>& functions,
                     const std::vector<std::string>& algorithms,
                     const std::vector<std::vector<double>>& mean_scores,
                     bool lower_is_better = true);

struct FriedmanResult {
    double chi_square = 0.0;
    bool significant_at_0_05 = false;
    double p_value = 1.0;
};

/// Friedman chi-square from rank column sums over n_functions rows.
FriedmanResult friedman(const std::vector<int>& column_sums, int n_functions);

/// Friedman test over a rank table (column sums taken from the table, or
/// recomputed from the rank matrix when absent).
FriedmanResult friedman(const RankTable& table);

/// Decision against the tabulated df = k-1 critical value at alpha = 0.05;
/// strictly greater counts as significant.
bool chi_square_significant(double chi_square, int k_algorithms);

/// Regularized upper incomplete gamma Q(s, x); Q(df/2, x/2) is the upper
/// tail of the chi-squared distribution.
double regularized_gamma_q(double s, double x);

}  // namespace moana

#endif  // MOANA_METRICS_HPP
