#include "sgo/scaled_run.hpp"

#include "sgo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace sgo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double real_or_nan(const ExtendedNumeral& x) { return x.is_real() ? x.real_part() : kNaN; }

double relative_residual(const ExtendedNumeral& x) {
    return x.non_real_magnitude() / std::max(1.0, std::abs(x.real_part()));
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double checked_value(const Objective& f, const Point& x) {
    const WideReal y = f(x);
    const double v = static_cast<double>(y);
    if (!std::isfinite(v)) throw ObjectiveError("objective returned a non-finite value at " + format_point(x));
    return v;
}

struct ScaledModel {
    ExtendedNumeral mu;
    std::vector<ExtendedNumeral> residuals;
    ExtendedNumeral sigma;
    double sigma_bar = 0.0;
    ExtendedNumeral z_on;
    bool cancellation = false;
};

ScaledModel fit_scaled(const std::vector<ExtendedNumeral>& z, const CorrelationFactor& factor,
                       Estimator estimator, const ExtendedNumeral& a, double epsilon) {
    const auto n = static_cast<Eigen::Index>(z.size());
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd w;
    if (estimator == Estimator::mle) {
        const Eigen::VectorXd u = factor.solve(ones);
        w = u / u.sum();
    } else {
        w = ones / static_cast<double>(n);
    }

    ScaledModel m;
    for (Eigen::Index i = 0; i < n; ++i) m.mu += z[static_cast<std::size_t>(i)] * w[i];
    for (const auto& zi : z) m.residuals.push_back(zi - m.mu);

    ExtendedNumeral s2;
    if (estimator == Estimator::mle) {
        const Eigen::MatrixXd precision = factor.inverse();
        for (Eigen::Index i = 0; i < n; ++i) {
            ExtendedNumeral row;
            for (Eigen::Index j = 0; j < n; ++j) row += m.residuals[static_cast<std::size_t>(j)] * precision(i, j);
            s2 += m.residuals[static_cast<std::size_t>(i)] * row;
        }
        s2 = s2 * (1.0 / static_cast<double>(n));
    } else {
        if (n < 2) throw InsufficientDataError("sample variance needs at least two observations");
        for (const auto& r : m.residuals) s2 += r * r;
        s2 = s2 * (1.0 / static_cast<double>(n - 1));
    }

    // s2 / a^2 must be an ordinary number; its root times a is sigma.
    const ExtendedNumeral unit_s2 = s2.div_monomial(a * a);
    if (relative_residual(unit_s2) > kCollapseTolerance) {
        throw InvariantViolation("scaled variance " + s2.to_string() + " is not a multiple of a^2");
    }
    m.sigma_bar = std::sqrt(std::max(unit_s2.real_part(), 0.0));
    m.sigma = a * m.sigma_bar;

    const ExtendedNumeral& z_min = *std::min_element(z.begin(), z.end());
    m.z_on = z_min - m.sigma * epsilon;
    m.cancellation = m.mu.cancelled() || s2.cancelled() ||
                     std::any_of(m.residuals.begin(), m.residuals.end(),
                                 [](const ExtendedNumeral& r) { return r.cancelled(); });
    return m;
}

struct ScaledSelection {
    ScaledStep step;
    ExtendedNumeral key;
};

void check_scale(const ExtendedNumeral& a) {
    if (!a.is_monomial() || !(a.leading_coefficient() > 0.0)) {
        throw UnsupportedOperation("unsupported scale '" + a.to_string() +
                                   "': the factor must be a single positive term c*G^p");
    }
}

CandidateGrid grid_for(const Region& region, const OptimizerConfig& config) {
    return CandidateGrid(region, config.resolution.empty() ? CandidateGrid::default_resolution(region.dim())
                                                           : config.resolution);
}

ScaledSelection select_scaled(CriterionKind kind, const EvaluationHistory& history, const std::vector<ExtendedNumeral>& z,
                        const CandidateGrid& grid, const ExtendedNumeral& a, const OptimizerConfig& config,
                        int it) {
    // The conventional posterior supplies the value-free correlation
    // structure and the reference criterion for the certificate.
    const SurrogatePosterior reference(history, config.kernel, config.estimator);
    const AspirationLevel reference_level = aspiration(history, reference.parameters(), config.epsilon);
    const ScaledModel model = fit_scaled(z, reference.factor(), config.estimator, a, config.epsilon);

    ScaledStep step;
    step.iteration = it;
    step.f_value = kNaN;
    step.mu = model.mu;
    step.sigma = model.sigma;
    step.z_on = model.z_on;
    step.certificate.cancellation = model.cancellation;

    std::optional<std::size_t> winner;
    ExtendedNumeral best_key;
    double best_value = kNaN;
    if (!(model.sigma_bar > 0.0)) {
        for (std::size_t i = 0; i < grid.size() && !winner; ++i) {
            if (!history.contains_point(grid[i])) winner = i;
        }
        if (!winner) throw NoCandidateError("every grid candidate has already been evaluated");
        step.fallback = true;
    } else {
        constexpr double kNegInf = -std::numeric_limits<double>::infinity();
        std::vector<double> values(grid.size(), kNegInf);
        std::vector<ExtendedNumeral> keys(grid.size());
        ExtendedNumeral top;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Point& x = grid[i];
            if (history.contains_point(x)) continue;
            const double root = std::sqrt(reference.moments(x).unit_variance);
            if (root <= kDegenerateRatio) continue;

            const Eigen::VectorXd k = reference.kriging_weights(x);
            ExtendedNumeral mean = model.mu;
            for (std::size_t j = 0; j < model.residuals.size(); ++j) {
                mean += model.residuals[j] * k[static_cast<Eigen::Index>(j)];
            }
            const ExtendedNumeral s = model.sigma * root;
            const ExtendedNumeral standardized = (model.z_on - mean) / s;
            const double u = standardized.real_part();
            const double conventional = evaluate_criterion(kind, reference, reference_level, x).value;

            ExtendedNumeral key;
            double value = 0.0;
            if (kind == CriterionKind::probability_of_improvement) {
                // compared after collapsing: leftover round-off at other
                // grades must not take part in the ordering
                key = ExtendedNumeral(u);
                value = u;
            } else {
                key = s * (u * normal_cdf(u) + normal_pdf(u));
                value = key.div_monomial(a).real_part();
            }
            auto& cert = step.certificate;
            ++cert.candidates;
            cert.max_residual = std::max(cert.max_residual, relative_residual(standardized));
            cert.max_deviation = std::max(cert.max_deviation, relative_gap(value, conventional));
            cert.cancellation = cert.cancellation || standardized.cancelled();

            if (!winner || key > top) {
                winner = i;
                top = key;
            }
            values[i] = value;
            keys[i] = key;
        }
        // ties within rounding go to the lowest index, as in the conventional run
        if (winner) winner = lowest_tied_index(values, values[*winner]);
        if (winner) {
            best_key = keys[*winner];
            best_value = values[*winner];
        }
        if (!winner) {
            throw NoCandidateError("every candidate is degenerate or already evaluated; cannot select a point");
        }
        if (step.certificate.max_residual > kCollapseTolerance) {
            throw InvariantViolation("criterion did not collapse to an ordinary number at step " +
                                     std::to_string(it));
        }
    }
    step.certificate.collapsed = step.certificate.max_residual <= kCollapseTolerance &&
                                 step.certificate.max_deviation <= kCollapseTolerance;
    step.grid_index = *winner;
    step.point = grid[*winner];
    step.criterion = best_value;
    return {std::move(step), best_key};
}

}  // namespace

ScaledRunResult scaled_criterion_run(Algorithm algorithm, const Objective& f, const Region& region,
                                     const std::vector<Point>& initial_design, int budget,
                                     const ExtendedNumeral& a, const ExtendedNumeral& b,
                                     const OptimizerConfig& config) {
    check_scale(a);
    if (budget < 0) throw InvalidArgument("budget must be non-negative");
    if (initial_design.empty()) throw InvalidArgument("initial design must contain at least one point");

    const CandidateGrid grid = grid_for(region, config);
    const CriterionKind kind = criterion_for(algorithm);

    std::vector<double> f_values;
    for (const auto& x : initial_design) f_values.push_back(checked_value(f, x));
    EvaluationHistory history(region, initial_design, f_values);

    ScaledRunResult result;
    result.trace.algorithm = algorithm;
    result.trace.initial_points = initial_design;
    std::vector<ExtendedNumeral> z;
    for (double v : f_values) {
        z.push_back(a * v + b);
        result.initial_values.push_back(z.back());
        result.trace.initial_values.push_back(real_or_nan(z.back()));
    }

    for (int it = 1; it <= budget; ++it) {
        ScaledSelection sel = select_scaled(kind, history, z, grid, a, config, it);
        ScaledStep& step = sel.step;
        step.f_value = checked_value(f, step.point);
        step.z_value = a * step.f_value + b;
        history.append(step.point, step.f_value);
        z.push_back(step.z_value);

        IterationRecord r;
        r.iteration = it;
        r.grid_index = step.grid_index;
        r.point = step.point;
        r.y = real_or_nan(step.z_value);
        r.criterion = kind == CriterionKind::probability_of_improvement ? step.criterion : real_or_nan(sel.key);
        r.mu = real_or_nan(step.mu);
        r.sigma2 = real_or_nan(step.sigma * step.sigma);
        r.y_on = real_or_nan(step.z_on);
        r.best = real_or_nan(*std::min_element(z.begin(), z.end()));
        r.fallback = step.fallback;
        result.trace.iterations.push_back(std::move(r));
        result.steps.push_back(std::move(step));
    }
    return result;
}

ScaledStep scaled_next_point(Algorithm algorithm, const Region& region, const std::vector<Point>& points,
                             const std::vector<double>& f_values, const ExtendedNumeral& a,
                             const ExtendedNumeral& b, const OptimizerConfig& config) {
    check_scale(a);
    const EvaluationHistory history(region, points, f_values);
    std::vector<ExtendedNumeral> z;
    for (double v : f_values) z.push_back(a * v + b);
    return select_scaled(criterion_for(algorithm), history, z, grid_for(region, config), a, config, 1).step;
}

}  // namespace sgo
