#include "moana/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace moana {

IgdSample igd(const std::vector<ObjectiveVector>& front,
              const std::vector<ObjectiveVector>& reference, bool root_of_sum_form) {
    if (front.empty()) throw std::invalid_argument("igd: front is empty");
    if (reference.empty()) throw std::invalid_argument("igd: reference is empty");

    double sum_sq = 0.0, sum = 0.0;
    for (const auto& ref : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : front) {
            double d2 = 0.0;
            for (std::size_t o = 0; o < ref.size(); ++o) {
                const double d = ref[o] - f[o];
                d2 += d * d;
            }
            best = std::min(best, d2);
        }
        sum_sq += best;
        sum += std::sqrt(best);
    }
    const double n = static_cast<double>(reference.size());
    IgdSample out;
    out.value = root_of_sum_form ? std::sqrt(sum_sq) / n : sum / n;
    out.front_size = static_cast<int>(front.size());
    out.reference_size = static_cast<int>(reference.size());
    return out;
}

namespace {

// midranks on the pooled sample; returns (ranks in pooled sorted order is
// not needed, so ranks are aligned with the input order)
std::vector<double> midranks(const std::vector<double>& pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
        i = j + 1;
    }
    return ranks;
}

double exact_two_sided_p(const std::vector<double>& ranks, std::size_t n_a, double observed) {
    const std::size_t n = ranks.size();
    // iterate all C(n, n_a) index subsets for sample a
    std::vector<std::size_t> comb(n_a);
    std::iota(comb.begin(), comb.end(), 0);
    long total = 0, count_le = 0, count_ge = 0;
    const double eps = 1e-9;
    while (true) {
        double w = 0.0;
        for (std::size_t idx : comb) w += ranks[idx];
        ++total;
        if (w <= observed + eps) ++count_le;
        if (w >= observed - eps) ++count_ge;

        // next combination
        std::size_t k = n_a;
        while (k > 0 && comb[k - 1] == n - n_a + k - 1) --k;
        if (k == 0) break;
        ++comb[k - 1];
        for (std::size_t t = k; t < n_a; ++t) comb[t] = comb[t - 1] + 1;
    }
    const double tail = static_cast<double>(std::min(count_le, count_ge)) / total;
    return std::min(1.0, 2.0 * tail);
}

double normal_two_sided_p(const std::vector<double>& pooled, const std::vector<double>& ranks,
                          std::size_t n_a, double observed) {
    const double n = static_cast<double>(pooled.size());
    const double na = static_cast<double>(n_a);
    const double nb = n - na;
    const double mean = na * (n + 1.0) / 2.0;

    // tie correction over groups of equal pooled values
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_sum = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_sum += t * t * t - t;
        i = j + 1;
    }
    const double variance = na * nb / 12.0 * ((n + 1.0) - tie_sum / (n * (n - 1.0)));
    if (variance <= 0.0) return 1.0;

    double z = (std::fabs(observed - mean) - 0.5) / std::sqrt(variance);
    if (z < 0.0) z = 0.0;
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace

double wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) {
        throw std::invalid_argument("wilcoxon_rank_sum: each sample needs >= 2 observations");
    }
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = midranks(pooled);
    double observed = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) observed += ranks[i];

    if (pooled.size() <= 20) return exact_two_sided_p(ranks, a.size(), observed);
    return normal_two_sided_p(pooled, ranks, a.size(), observed);
}

RankTable rank_table(const std::vector<std::string>& functions,
                     const std::vector<std::string>& algorithms,
                     const std::vector<std::vector<double>>& mean_scores,
                     bool lower_is_better) {
    const std::size_t n = functions.size();
    const std::size_t k = algorithms.size();
    if (mean_scores.size() != n) {
        throw std::invalid_argument("rank_table: one score row per function required");
    }
    RankTable table;
    table.functions = functions;
    table.algorithms = algorithms;
    table.ranks.assign(n, std::vector<int>(k, 0));
    table.column_sums.assign(k, 0);

    for (std::size_t row = 0; row < n; ++row) {
        const auto& scores = mean_scores[row];
        if (scores.size() != k) {
            throw std::invalid_argument("rank_table: score row has wrong width");
        }
        for (double s : scores) {
            if (std::isnan(s)) throw std::invalid_argument("rank_table: NaN score");
        }
        std::vector<std::size_t> order(k);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            return lower_is_better ? scores[i] < scores[j] : scores[i] > scores[j];
        });
        // competition ranking: ties share the smaller rank, next rank skipped
        for (std::size_t t = 0; t < k; ++t) {
            if (t > 0 && scores[order[t]] == scores[order[t - 1]]) {
                table.ranks[row][order[t]] = table.ranks[row][order[t - 1]];
            } else {
                table.ranks[row][order[t]] = static_cast<int>(t) + 1;
            }
        }
        for (std::size_t j = 0; j < k; ++j) table.column_sums[j] += table.ranks[row][j];
    }
    return table;
}

double regularized_gamma_q(double s, double x) {
    if (s <= 0.0 || x < 0.0) {
        throw std::invalid_argument("regularized_gamma_q: need s > 0 and x >= 0");
    }
    if (x == 0.0) return 1.0;
    if (x < s + 1.0) {
        // lower series
        double ap = s;
        double term = 1.0 / s;
        double sum = term;
        for (int it = 0; it < 1000; ++it) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return 1.0 - sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
    }
    // upper continued fraction (modified Lentz)
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int it = 1; it <= 1000; ++it) {
        const double an = -static_cast<double>(it) * (static_cast<double>(it) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

namespace {

// upper 5% chi-squared critical values, df 1..10
constexpr double kChiSqCrit05[] = {3.841, 5.991, 7.815, 9.488, 11.070,
                                   12.592, 14.067, 15.507, 16.919, 18.307};

double chi_square_critical_05(int df) {
    if (df >= 1 && df <= 10) return kChiSqCrit05[df - 1];
    // bisection on the monotone upper tail
    double lo = 0.0, hi = df + 100.0 * std::sqrt(2.0 * df) + 100.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (regularized_gamma_q(df / 2.0, mid / 2.0) > 0.05) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

bool chi_square_significant(double chi_square, int k_algorithms) {
    return chi_square > chi_square_critical_05(k_algorithms - 1);
}

FriedmanResult friedman(const std::vector<int>& column_sums, int n_functions) {
    const int k = static_cast<int>(column_sums.size());
    if (n_functions < 2) throw std::invalid_argument("friedman: need >= 2 functions");
    if (k < 3) throw std::invalid_argument("friedman: need >= 3 algorithms");

    double sum_sq = 0.0;
    for (int r : column_sums) sum_sq += static_cast<double>(r) * r;
    const double n = n_functions;
    FriedmanResult out;
    out.chi_square = 12.0 / (n * k * (k + 1.0)) * sum_sq - 3.0 * n * (k + 1.0);
    out.significant_at_0_05 = chi_square_significant(out.chi_square, k);
    out.p_value = out.chi_square <= 0.0
                      ? 1.0
                      : regularized_gamma_q((k - 1) / 2.0, out.chi_square / 2.0);
    return out;
}

FriedmanResult friedman(const RankTable& table) {
    std::vector<int> sums = table.column_sums;
    if (sums.empty()) {
        sums.assign(table.algorithms.size(), 0);
        for (const auto& row : table.ranks) {
            if (row.size() != sums.size()) {
                throw std::invalid_argument("friedman: rank matrix width mismatch");
            }
            for (std::size_t j = 0; j < row.size(); ++j) sums[j] += row[j];
        }
    }
    if (!table.ranks.empty() && table.ranks.size() != table.functions.size()) {
        throw std::invalid_argument("friedman: rank matrix height mismatch");
    }
    return friedman(sums, static_cast<int>(table.functions.size()));
}

}  // namespace moana
