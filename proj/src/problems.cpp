#include "moana/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace moana {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(const DecisionVector& x, std::size_t at_least, const char* who) {
    if (x.size() < at_least) {
        throw std::invalid_argument(std::string(who) + ": decision vector too short");
    }
}

void require_bounds(const DecisionVector& x,
                    const std::vector<std::pair<double, double>>& bounds, const char* who) {
    if (x.size() != bounds.size()) {
        throw std::invalid_argument(std::string(who) + ": wrong decision dimension");
    }
    if (!within_bounds(x, bounds)) {
        throw std::invalid_argument(std::string(who) + ": decision vector out of bounds");
    }
}

std::vector<std::pair<double, double>> zdt_bounds(int id, int dim) {
    std::vector<std::pair<double, double>> bounds(dim, {0.0, 1.0});
    if (id == 4) {
        for (int j = 1; j < dim; ++j) bounds[j] = {-5.0, 5.0};
    }
    return bounds;
}

double zdt_tail_mean(const DecisionVector& x) {
    double sum = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) sum += x[i];
    return sum / static_cast<double>(x.size() - 1);
}

}  // namespace

ObjectiveVector evaluate_zdt(int id, const DecisionVector& x) {
    require_dim(x, 2, "evaluate_zdt");
    const int dim = static_cast<int>(x.size());
    require_bounds(x, zdt_bounds(id, dim), "evaluate_zdt");
    const double x1 = x[0];
    switch (id) {
        case 1: {
            const double g = 1.0 + 9.0 * zdt_tail_mean(x);
            return {x1, g * (1.0 - std::sqrt(x1 / g))};
        }
        case 2: {
            const double g = 1.0 + 9.0 * zdt_tail_mean(x);
            const double ratio = x1 / g;
            return {x1, g * (1.0 - ratio * ratio)};
        }
        case 3: {
            const double g = 1.0 + 9.0 * zdt_tail_mean(x);
            const double ratio = x1 / g;
            return {x1, g * (1.0 - std::sqrt(ratio) - ratio * std::sin(10.0 * kPi * x1))};
        }
        case 4: {
            double g = 91.0;
            for (std::size_t i = 1; i < x.size(); ++i) {
                g += x[i] * x[i] - 10.0 * std::cos(4.0 * kPi * x[i]);
            }
            return {x1, g * (1.0 - std::sqrt(x1 / g))};
        }
        case 6: {
            const double s = std::sin(6.0 * kPi * x1);
            const double f1 = 1.0 - std::exp(-4.0 * x1) * std::pow(s, 6.0);
            const double g = 1.0 + 9.0 * std::pow(zdt_tail_mean(x), 0.25);
            const double ratio = f1 / g;
            return {f1, g * (1.0 - ratio * ratio)};
        }
        default:
            throw std::invalid_argument("evaluate_zdt: id must be one of 1, 2, 3, 4, 6");
    }
}

namespace {

std::vector<std::pair<double, double>> mmf_bounds(int id) {
    switch (id) {
        case 1: return {{1.0, 3.0}, {-1.0, 1.0}};
        case 2: return {{0.0, 1.0}, {0.0, 2.0}};
        case 3: return {{0.0, 1.0}, {0.0, 1.5}};
        case 4: return {{-1.0, 1.0}, {0.0, 2.0}};
        case 5: return {{-1.0, 3.0}, {1.0, 3.0}};
        case 6: return {{-1.0, 3.0}, {1.0, 2.0}};
        case 7: return {{1.0, 3.0}, {-1.0, 1.0}};
        default:
            throw std::invalid_argument("evaluate_mmf: id must lie in 1..7");
    }
}

}  // namespace

ObjectiveVector evaluate_mmf(int id, const DecisionVector& x) {
    require_bounds(x, mmf_bounds(id), "evaluate_mmf");
    const double x1 = x[0];
    const double x2 = x[1];
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    switch (id) {
        case 1: {
            const double a = std::fabs(x1 - 2.0);
            const double s = std::sin(6.0 * kPi * a + kPi);
            return {a, 1.0 - std::sqrt(a) + 2.0 * (x2 - s) * (x2 - s)};
        }
        case 2: {
            const double s = std::sqrt(x1);
            double f2;
            if (x2 <= 1.0) {
                const double u = x2 - s;
                f2 = 1.0 - s + 2.0 * (4.0 * u - 2.0 * std::cos(20.0 * u * kPi * inv_sqrt2) + 2.0);
            } else {
                const double u = x2 - 1.0 - s;
                f2 = 1.0 - s + 2.0 * (4.0 * u - std::cos(20.0 * u * u * kPi * inv_sqrt2) + 2.0);
            }
            return {x1, f2};
        }
        case 3: {
            const double s = std::sqrt(x1);
            // the middle band 0.5 < x2 < 1 splits on x1; x1 == 0.25 takes
            // the first branch
            bool first;
            if (x2 <= 0.5) {
                first = true;
            } else if (x2 < 1.0) {
                first = x1 >= 0.25;
            } else {
                first = false;
            }
            double f2;
            if (first) {
                const double u = x2 - s;
                f2 = 1.0 - s + 2.0 * (4.0 * u - 2.0 * std::cos(20.0 * u * kPi * inv_sqrt2) + 2.0);
            } else {
                const double u = x2 - 0.5 - s;
                f2 = 1.0 - s +
                     2.0 * (4.0 * u * u - std::cos(20.0 * u * u * kPi * inv_sqrt2) + 2.0);
            }
            return {x1, f2};
        }
        case 4: {
            const double a = std::fabs(x1);
            const double s = std::sin(kPi * a);
            const double inner = (x2 < 1.0) ? 1.0 - x1 * x1 + 2.0 * (x2 - s)
                                            : 1.0 - x1 * x1 + 2.0 * (x2 - 1.0 - s);
            return {a, inner * inner};
        }
        case 5: {
            const double a = std::fabs(x1 - 2.0);
            const double s = std::sin(6.0 * kPi * a + kPi);
            const double off = (x2 <= 1.0) ? x2 - s : x2 - 2.0 - s;
            return {a, 1.0 - std::sqrt(a) + 2.0 * off * off};
        }
        case 6: {
            const double a = std::fabs(x1 - 2.0);
            const double s = std::sin(6.0 * kPi * a + kPi);
            const double off = (x2 <= 1.0) ? x2 - s : x2 - 1.0 - s;
            return {std::fabs(x1 - 1.0), 1.0 - std::sqrt(a) + 2.0 * off * off};
        }
        case 7: {
            const double a = std::fabs(x1 - 2.0);
            const double wiggle =
                (0.3 * a * a * std::cos(24.0 * kPi * a + 4.0 * kPi) + 0.6 * a) *
                std::sin(6.0 * kPi * a + kPi);
            const double off = x2 - wiggle;
            return {a, 1.0 - std::sqrt(a) + off * off};
        }
        default:
            throw std::invalid_argument("evaluate_mmf: id must lie in 1..7");
    }
}

namespace {

const std::vector<std::pair<double, double>> kWeldedBounds = {
    {0.125, 5.0},   // h
    {0.1, 10.0},    // l
    {0.1, 10.0},    // t
    {0.125, 5.0},   // b
};

}  // namespace

std::pair<ObjectiveVector, ConstraintReport> evaluate_welded_beam(const WeldedBeamDesign& d) {
    const double h = d.h, l = d.l, t = d.t, b = d.b;
    require_bounds({h, l, t, b}, kWeldedBounds, "evaluate_welded_beam");

    const double f1 = 1.10471 * h * h * l + 0.04811 * t * b * (14.0 + l);
    const double f2 = 2.1952 / (t * t * t * b);

    const double tau_p = 6000.0 / (std::sqrt(2.0) * h * l);
    const double radius = std::sqrt(0.25 * (l * l + (h + t) * (h + t)));
    const double tau_pp = 6000.0 * (14.0 + 0.5 * l) * radius /
                          (2.0 * (0.707 * h * l * (l * l / 12.0 + 0.25 * (h + t) * (h + t))));
    const double shear =
        std::sqrt(tau_p * tau_p + tau_pp * tau_pp + l * tau_p * tau_pp / radius);
    const double normal = 504000.0 / (t * t * b);
    const double buckling = 64746.022 * (1.0 - 0.0282346 * t) * t * b * b * b;

    ConstraintReport report = make_constraint_report({
        13600.0 - shear,
        30000.0 - normal,
        b - h,
        buckling - 6000.0,
    });
    return {{f1, f2}, std::move(report)};
}

// ---------------------------------------------------------------------------
// reference fronts
// ---------------------------------------------------------------------------

namespace {

// largest value of exp(-4x) * sin^6(6 pi x) on [0, 1] (sets the lower end of
// the ZDT6 front); dense scan plus ternary refinement
double zdt6_front_f1_min() {
    auto s = [](double x) {
        const double t = std::sin(6.0 * kPi * x);
        return std::exp(-4.0 * x) * std::pow(t, 6.0);
    };
    const int coarse = 20000;
    double best_x = 0.0, best = 0.0;
    for (int i = 0; i <= coarse; ++i) {
        const double x = static_cast<double>(i) / coarse;
        const double v = s(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    double lo = std::max(0.0, best_x - 1.0 / coarse);
    double hi = std::min(1.0, best_x + 1.0 / coarse);
    for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (s(m1) < s(m2)) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    return 1.0 - s(0.5 * (lo + hi));
}

std::vector<ObjectiveVector> zdt_analytic_front(int id, int count) {
    std::vector<ObjectiveVector> points;
    points.reserve(count);
    double f1_lo = 0.0, f1_hi = 1.0;
    if (id == 6) f1_lo = zdt6_front_f1_min();
    for (int i = 0; i < count; ++i) {
        double f1 = f1_lo + (f1_hi - f1_lo) * static_cast<double>(i) / (count - 1);
        if (i == 0) f1 = f1_lo;
        if (i == count - 1) f1 = f1_hi;
        double f2;
        switch (id) {
            case 1:
            case 4: f2 = 1.0 - std::sqrt(f1); break;
            case 2:
            case 6: f2 = 1.0 - f1 * f1; break;
            case 3: f2 = 1.0 - std::sqrt(f1) - f1 * std::sin(10.0 * kPi * f1); break;
            default: throw std::logic_error("zdt_analytic_front: bad id");
        }
        points.push_back({f1, f2});
    }
    if (id == 3) points = non_dominated_filter(points);
    return points;
}

// Streaming two-objective skyline: keys ordered by f1 with strictly
// decreasing f2. Insertion is O(log n) amortized, so the full grid never
// needs to be materialized.
class Skyline {
public:
    void offer(double f1, double f2) {
        auto it = points_.lower_bound(f1);
        if (it != points_.begin()) {
            if (std::prev(it)->second <= f2) return;   // dominated
        }
        if (it != points_.end() && it->first == f1 && it->second <= f2) return;
        while (it != points_.end() && it->second >= f2) it = points_.erase(it);
        points_.emplace_hint(it, f1, f2);
    }

    std::vector<ObjectiveVector> collect() const {
        std::vector<ObjectiveVector> out;
        out.reserve(points_.size());
        for (const auto& [f1, f2] : points_) out.push_back({f1, f2});
        return out;
    }

    std::size_t size() const { return points_.size(); }

private:
    std::map<double, double> points_;
};

std::vector<ObjectiveVector> grid_skyline(const ProblemDef& problem, int per_axis) {
    Skyline skyline;
    const int dim = problem.dim;
    std::vector<int> idx(dim, 0);
    DecisionVector x(dim);
    while (true) {
        for (int j = 0; j < dim; ++j) {
            const auto& [lo, hi] = problem.bounds[j];
            x[j] = lo + (hi - lo) * static_cast<double>(idx[j]) / (per_axis - 1);
        }
        bool feasible = true;
        if (problem.constraints) feasible = problem.constraints(x).feasible;
        if (feasible) {
            const ObjectiveVector f = problem.evaluate(x);
            skyline.offer(f[0], f[1]);
        }
        int j = dim - 1;
        while (j >= 0 && ++idx[j] == per_axis) {
            idx[j] = 0;
            --j;
        }
        if (j < 0) break;
    }
    return skyline.collect();
}

// Greedy farthest-point downsample in range-normalized objective space,
// seeded at the minimum-f1 point.
std::vector<ObjectiveVector> farthest_point_subset(const std::vector<ObjectiveVector>& points,
                                                   int count) {
    const std::size_t n_obj = points.front().size();
    std::vector<double> scale(n_obj, 1.0);
    for (std::size_t o = 0; o < n_obj; ++o) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& p : points) {
            lo = std::min(lo, p[o]);
            hi = std::max(hi, p[o]);
        }
        if (hi > lo) scale[o] = 1.0 / (hi - lo);
    }
    auto dist2 = [&](const ObjectiveVector& a, const ObjectiveVector& b) {
        double d2 = 0.0;
        for (std::size_t o = 0; o < n_obj; ++o) {
            const double d = (a[o] - b[o]) * scale[o];
            d2 += d * d;
        }
        return d2;
    };

    std::size_t seed = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i] < points[seed]) seed = i;
    }
    std::vector<char> taken(points.size(), 0);
    std::vector<double> min_d2(points.size());
    taken[seed] = 1;
    for (std::size_t i = 0; i < points.size(); ++i) min_d2[i] = dist2(points[i], points[seed]);

    std::vector<std::size_t> order = {seed};
    while (static_cast<int>(order.size()) < count) {
        std::size_t best = 0;
        double best_d2 = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!taken[i] && min_d2[i] > best_d2) {
                best_d2 = min_d2[i];
                best = i;
            }
        }
        taken[best] = 1;
        order.push_back(best);
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!taken[i]) min_d2[i] = std::min(min_d2[i], dist2(points[i], points[best]));
        }
    }

    std::vector<ObjectiveVector> out;
    out.reserve(order.size());
    for (std::size_t i : order) out.push_back(points[i]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

ReferenceFront sample_reference_front(const ProblemDef& problem, int count) {
    if (count < 2) {
        throw std::invalid_argument("sample_reference_front: count must be >= 2");
    }
    ReferenceFront front;
    if (problem.analytic_front) {
        front.provenance = ReferenceFront::Provenance::analytic;
        front.points = problem.analytic_front(count);
        return front;
    }
    if (problem.n_obj != 2) {
        throw std::invalid_argument("sample_reference_front: oracle sampling supports 2 objectives");
    }
    front.provenance = ReferenceFront::Provenance::sampled_oracle;

    // at least 1e6 grid points, refined while the skyline is too small
    int per_axis = problem.dim <= 2 ? 1024 : 32;
    const int cap = problem.dim <= 2 ? 8192 : 64;
    std::vector<ObjectiveVector> skyline;
    while (true) {
        skyline = grid_skyline(problem, per_axis);
        if (static_cast<int>(skyline.size()) >= count || per_axis >= cap) break;
        per_axis *= 2;
    }
    if (static_cast<int>(skyline.size()) > count) {
        skyline = farthest_point_subset(skyline, count);
    }
    front.points = std::move(skyline);
    return front;
}

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

ProblemDef make_zdt(int id, int dim) {
    if (id != 1 && id != 2 && id != 3 && id != 4 && id != 6) {
        throw std::invalid_argument("make_zdt: id must be one of 1, 2, 3, 4, 6");
    }
    if (dim == 0) dim = (id == 4) ? 10 : 30;
    if (dim < 2) throw std::invalid_argument("make_zdt: dimension must be >= 2");
    // the ZDT4 g offset (91) bakes in nine tail variables
    if (id == 4 && dim != 10) throw std::invalid_argument("make_zdt: zdt4 is fixed at dimension 10");
    ProblemDef p;
    p.name = "zdt" + std::to_string(id);
    p.dim = dim;
    p.bounds = zdt_bounds(id, dim);
    p.n_obj = 2;
    p.evaluate = [id](const DecisionVector& x) { return evaluate_zdt(id, x); };
    p.analytic_front = [id](int count) { return zdt_analytic_front(id, count); };
    return p;
}

ProblemDef make_mmf(int id) {
    ProblemDef p;
    p.name = "mmf" + std::to_string(id);
    p.dim = 2;
    p.bounds = mmf_bounds(id);
    p.n_obj = 2;
    p.evaluate = [id](const DecisionVector& x) { return evaluate_mmf(id, x); };
    return p;
}

ProblemDef make_welded_beam() {
    ProblemDef p;
    p.name = "welded_beam";
    p.dim = 4;
    p.bounds = kWeldedBounds;
    p.n_obj = 2;
    p.evaluate = [](const DecisionVector& x) {
        return evaluate_welded_beam({x[0], x[1], x[2], x[3]}).first;
    };
    p.constraints = [](const DecisionVector& x) {
        return evaluate_welded_beam({x[0], x[1], x[2], x[3]}).second;
    };
    return p;
}

const std::vector<std::string>& problem_names() {
    static const std::vector<std::string> names = {
        "zdt1", "zdt2", "zdt3", "zdt4", "zdt6",
        "mmf1", "mmf2", "mmf3", "mmf4", "mmf5", "mmf6", "mmf7",
        "welded_beam",
    };
    return names;
}

ProblemDef make_problem(const std::string& name, int zdt_dim) {
    if (name.rfind("zdt", 0) == 0 && name.size() == 4) {
        const char c = name[3];
        if (c == '1' || c == '2' || c == '3' || c == '4' || c == '6') {
            return make_zdt(c - '0', zdt_dim);
        }
    }
    if (name.rfind("mmf", 0) == 0 && name.size() == 4 && name[3] >= '1' && name[3] <= '7') {
        return make_mmf(name[3] - '0');
    }
    if (name == "welded_beam") return make_welded_beam();
    throw std::invalid_argument("problem not in registry: " + name);
}

}  // namespace moana
