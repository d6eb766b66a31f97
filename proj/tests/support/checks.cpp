#include "checks.hpp"

#include "oracles.hpp"

#include "sgo/acquisition.hpp"
#include "sgo/homogeneity.hpp"
#include "sgo/objectives.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace checks {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double rel(double value, double reference, double scale) {
    return std::abs(value - reference) / std::max(std::abs(reference), scale);
}

}  // namespace

void Stat::record(double error, double tolerance) {
    ++cases;
    if (std::isnan(error)) {
        ++failures;
        worst = error;
        return;
    }
    if (!std::isnan(worst)) worst = std::max(worst, error);
    if (!(error <= tolerance)) ++failures;
}

std::vector<sgo::Point> random_points(Rng& rng, int n, int d, double min_separation) {
    std::vector<sgo::Point> pts;
    while (static_cast<int>(pts.size()) < n) {
        sgo::Point x(d);
        for (int k = 0; k < d; ++k) x[k] = uniform(rng, 0.0, 1.0);
        const bool far = std::all_of(pts.begin(), pts.end(), [&](const sgo::Point& p) {
            return sgo::max_norm_distance(p, x) >= min_separation;
        });
        if (far) pts.push_back(x);
    }
    return pts;
}

std::vector<double> random_values(Rng& rng, int n, double lo, double hi) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(uniform(rng, lo, hi));
    return v;
}

sgo::direct::Partition random_partition(Rng& rng, int n, bool positive, double epsilon) {
    sgo::direct::Partition p;
    p.epsilon = epsilon;
    double left = 0.0;
    for (int i = 0; i < n; ++i) {
        const double delta = 0.5 * std::pow(3.0, -uniform_int(rng, 0, 3));
        const double fc = positive ? uniform(rng, 0.5, 2.0) : uniform(rng, -1.0, 1.0);
        p.intervals.push_back(sgo::direct::Interval::make(left, left + 2.0 * delta, fc));
        left += 2.0 * delta;
    }
    return p;
}

Stat interpolation(int histories, std::uint64_t seed) {
    Rng rng(seed);
    Stat s;
    for (int h = 0; h < histories; ++h) {
        const int d = 1 + h % 2;
        const int n = uniform_int(rng, 2, 10);
        const auto pts = random_points(rng, n, d, 0.02);
        const auto ys = random_values(rng, n);
        const sgo::Region region(sgo::Point::Zero(d), sgo::Point::Ones(d));
        const auto est = h % 3 == 0 ? sgo::Estimator::sample : sgo::Estimator::mle;
        const sgo::SurrogatePosterior post(sgo::EvaluationHistory(region, pts, ys), sgo::default_kernel(), est);
        const double sigma2 = post.parameters().sigma2;
        for (int i = 0; i < n; ++i) {
            const auto m = post.moments(pts[static_cast<std::size_t>(i)]);
            const double y = ys[static_cast<std::size_t>(i)];
            s.record(std::abs(m.mean - y) / (1.0 + std::abs(y)), 1e-8);
            s.record(sigma2 > 0.0 ? m.variance / sigma2 : m.variance, 1e-8);
        }
    }
    return s;
}

Stat moments_vs_oracle(int histories, std::uint64_t seed) {
    Rng rng(seed);
    Stat s;
    for (int h = 0; h < histories; ++h) {
        const int d = 1 + h % 2;
        const auto est = h % 2 == 0 ? sgo::Estimator::mle : sgo::Estimator::sample;
        const int n = uniform_int(rng, est == sgo::Estimator::mle ? 1 : 2, 6);
        const auto pts = random_points(rng, n, d, 0.05);
        const auto ys = random_values(rng, n);
        const sgo::Region region(sgo::Point::Zero(d), sgo::Point::Ones(d));
        const auto kernel = h % 4 == 3 ? sgo::CorrelationKernel(sgo::KernelFamily::squared_exponential, 5.0)
                                       : sgo::default_kernel();
        const sgo::SurrogatePosterior post(sgo::EvaluationHistory(region, pts, ys), kernel, est);
        const auto& params = post.parameters();
        auto queries = random_points(rng, 5, d, 0.0);
        queries.insert(queries.end(), pts.begin(), pts.end());
        for (const auto& x : queries) {
            const oracle::Moments o = oracle::explicit_moments(pts, ys, kernel, est, x);
            const auto m = post.moments(x);
            const double var_scale = std::max(o.sigma2, 1e-300);
            s.record(rel(params.mu, o.mu, 1.0), 1e-10);
            s.record(std::abs(params.sigma2 - o.sigma2) / var_scale, 1e-10);
            s.record(rel(m.mean, o.mean, 1.0), 1e-10);
            s.record(std::abs(m.variance - o.variance) / var_scale, 1e-10);
        }
    }
    return s;
}

Stat ei_vs_quadrature(int triples, std::uint64_t seed) {
    Rng rng(seed);
    Stat s;
    for (int t = 0; t < triples; ++t) {
        const double m = uniform(rng, -5.0, 5.0);
        const double sd = std::exp(uniform(rng, std::log(0.05), std::log(5.0)));
        const double y_on = m + sd * uniform(rng, -6.0, 4.0);
        const double closed = sgo::expected_improvement(y_on - m, sd);
        s.record(std::abs(closed - oracle::expected_improvement(m, sd, y_on)), 1e-8);
    }
    return s;
}

Stat normal_cdf_vs_oracle(int points) {
    Stat s;
    for (int i = 0; i < points; ++i) {
        const double t = -8.0 + 16.0 * i / (points - 1);
        s.record(std::abs(sgo::normal_cdf(t) - oracle::normal_cdf(t)), 1e-12);
    }
    return s;
}

Stat ei_scaling(int histories, std::uint64_t seed) {
    Rng rng(seed);
    Stat s;
    const sgo::Region region(0.0, 1.0);
    const sgo::CandidateGrid grid(region, {1001});
    for (int h = 0; h < histories; ++h) {
        const double a = kScales[static_cast<std::size_t>(h) % kScales.size()];
        const double b = kShifts[static_cast<std::size_t>(h) % kShifts.size()];
        const int n = uniform_int(rng, 3, 10);
        const auto pts = random_points(rng, n, 1, 0.01);
        const auto ys = random_values(rng, n);
        std::vector<sgo::WideReal> zs;
        for (double y : ys) zs.push_back(sgo::WideReal(a) * sgo::WideReal(y) + sgo::WideReal(b));
        const auto est = h % 2 == 0 ? sgo::Estimator::mle : sgo::Estimator::sample;
        const sgo::SurrogatePosterior base(sgo::EvaluationHistory(region, pts, ys), sgo::default_kernel(), est);
        const sgo::SurrogatePosterior scaled(sgo::EvaluationHistory(region, pts, zs), sgo::default_kernel(), est);
        const auto lb = sgo::aspiration(base.history(), base.parameters(), sgo::kDefaultEpsilon);
        const auto ls = sgo::aspiration(scaled.history(), scaled.parameters(), sgo::kDefaultEpsilon);
        // values far below the smallest normal number lose relative accuracy
        const double floor = a * std::sqrt(base.parameters().sigma2) * 1e-250;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (base.history().contains_point(grid[i])) continue;
            const double eb = sgo::expected_improvement(base, lb, grid[i]).value;
            const double es = sgo::expected_improvement(scaled, ls, grid[i]).value;
            s.record(std::abs(es - a * eb) / std::max(a * eb, floor), 1e-9);
        }
    }
    return s;
}

Stat direct_oracle_agreement(int partitions, std::uint64_t seed) {
    Rng rng(seed);
    Stat s;
    for (int p = 0; p < partitions; ++p) {
        const double eps = std::exp(uniform(rng, std::log(1e-4), std::log(0.1)));
        const auto part = random_partition(rng, 8, p % 2 == 0, eps);
        for (std::size_t j = 0; j < part.intervals.size(); ++j) {
            const bool closed = sgo::direct::potentially_optimal(part, j).optimal;
            s.record(closed == oracle::potentially_optimal(part, j) ? 0.0 : 1.0, 0.5);
        }
    }
    return s;
}

Stat counterexample_contract(int trials, std::uint64_t seed) {
    Rng rng(seed);
    Stat s;
    int attempts = 0;
    while (static_cast<int>(s.cases) < trials && attempts < 100 * trials) {
        ++attempts;
        const double eps = std::exp(uniform(rng, std::log(1e-3), std::log(0.1)));
        const auto part = random_partition(rng, 8, true, eps);
        double longest = 0.0;
        for (const auto& iv : part.intervals) longest = std::max(longest, iv.delta);
        for (std::size_t j = 0; j < part.intervals.size(); ++j) {
            if (sgo::direct::same_length(part.intervals[j].delta, longest)) continue;
            if (!sgo::direct::potentially_optimal(part, j).optimal) continue;
            const auto th = sgo::direct::counterexample_shift(part, j);
            const double shift = 1.01 * th.delta_f / eps;
            const bool before = oracle::potentially_optimal(part, j);
            const bool after = oracle::potentially_optimal(sgo::direct::translated(part, shift), j);
            s.record(before && !after ? 0.0 : 1.0, 0.5);
            break;
        }
    }
    return s;
}

SuiteResult homogeneity_suite(sgo::Algorithm algorithm, sgo::Estimator estimator) {
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r;
    sgo::OptimizerConfig config;
    config.estimator = estimator;
    for (const auto& name : sgo::runnable_objective_names()) {
        const auto& obj = sgo::find_objective(name);
        const auto design = sgo::default_initial_design(obj.region);
        for (double a : kScales) {
            for (double b : kShifts) {
                for (int budget : kBudgets) {
                    const auto report =
                        sgo::compare_runs(algorithm, obj.objective(), obj.region, design, budget, a, b, config);
                    ++r.runs;
                    r.steps += report.steps.size();
                    r.ties += report.ties();
                    r.mismatches += report.mismatches();
                    const bool power_of_two = b == 0.0 && std::exp2(std::round(std::log2(a))) == a;
                    if (power_of_two) {
                        r.exact_failures += static_cast<std::size_t>(std::count_if(
                            report.steps.begin(), report.steps.end(), [](const auto& st) { return !st.match; }));
                    }
                    if (!report.passed()) {
                        std::ostringstream os;
                        os << name << " a=" << a << " b=" << b << " budget=" << budget << " first mismatch at step "
                           << report.first_mismatch();
                        r.failed.push_back(os.str());
                    }
                }
            }
        }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace checks
