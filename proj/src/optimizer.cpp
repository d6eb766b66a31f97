#include "sgo/optimizer.hpp"

#include "sgo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sgo {

CriterionKind criterion_for(Algorithm algorithm) {
    return algorithm == Algorithm::p_algorithm ? CriterionKind::probability_of_improvement
                                               : CriterionKind::expected_improvement;
}

std::string to_string(Algorithm algorithm) {
    return algorithm == Algorithm::p_algorithm ? "p-algorithm" : "one-step-bayes";
}

bool nearly_equal(double a, double b, double relative) {
    if (a == b) return true;
    if (!std::isfinite(a) || !std::isfinite(b)) return false;
    return std::abs(a - b) <= relative * std::max(std::abs(a), std::abs(b));
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kRefineIterations = 40;

double score(CriterionKind kind, const SurrogatePosterior& posterior, const AspirationLevel& level,
             const Point& x) {
    const CriterionValue v = evaluate_criterion(kind, posterior, level, x);
    if (v.degenerate || std::isnan(v.value)) return kNegInf;
    return v.value;
}

Point golden_section(CriterionKind kind, const SurrogatePosterior& posterior,
                     const AspirationLevel& level, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto f = [&](double t) { return score(kind, posterior, level, make_point({t})); };
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < kRefineIterations; ++it) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return make_point({0.5 * (lo + hi)});
}

Point compass_search(CriterionKind kind, const SurrogatePosterior& posterior,
                     const AspirationLevel& level, const Point& start, const Point& lower,
                     const Point& upper, Point step) {
    Point best = start;
    double best_value = score(kind, posterior, level, best);
    for (int it = 0; it < kRefineIterations; ++it) {
        Point candidate_best = best;
        double candidate_value = best_value;
        for (Eigen::Index k = 0; k < best.size(); ++k) {
            for (double dir : {-1.0, 1.0}) {
                Point trial = best;
                trial[k] = std::clamp(best[k] + dir * step[k], lower[k], upper[k]);
                const double v = score(kind, posterior, level, trial);
                if (v > candidate_value) {
                    candidate_value = v;
                    candidate_best = trial;
                }
            }
        }
        if (candidate_value > best_value) {
            best = candidate_best;
            best_value = candidate_value;
        } else {
            step *= 0.5;
        }
    }
    return best;
}

void refine_selection(CriterionKind kind, const SurrogatePosterior& posterior,
                      const AspirationLevel& level, const CandidateGrid& grid, Selection& sel) {
    const Region& region = grid.region();
    const Point lower = (sel.point - grid.spacing()).cwiseMax(region.lower);
    const Point upper = (sel.point + grid.spacing()).cwiseMin(region.upper);
    const Point polished = region.dim() == 1
                               ? golden_section(kind, posterior, level, lower[0], upper[0])
                               : compass_search(kind, posterior, level, sel.point, lower, upper,
                                                grid.spacing());
    if (posterior.history().contains_point(polished)) return;
    const double v = score(kind, posterior, level, polished);
    if (v > sel.value) {
        sel.point = polished;
        sel.value = v;
        sel.refined = true;
    }
}

}  // namespace

std::optional<std::size_t> lowest_tied_index(const std::vector<double>& values, double top) {
    if (top == kNegInf) return std::nullopt;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] != kNegInf && nearly_equal(values[i], top, kExactTieRelative)) return i;
    }
    return std::nullopt;
}

Selection argmax_criterion(CriterionKind kind, const SurrogatePosterior& posterior,
                           const AspirationLevel& level, const CandidateGrid& grid, bool refine) {
    const auto& history = posterior.history();
    std::vector<double> values(grid.size(), kNegInf);
    double top = kNegInf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (history.contains_point(grid[i])) continue;
        values[i] = score(kind, posterior, level, grid[i]);
        top = std::max(top, values[i]);
    }
    const std::optional<std::size_t> winner = lowest_tied_index(values, top);
    if (!winner) {
        throw NoCandidateError("every candidate is degenerate or already evaluated; cannot select a point");
    }

    Selection sel;
    sel.grid_index = *winner;
    sel.point = grid[*winner];
    sel.value = values[*winner];
    sel.runner_up = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (values[i] == kNegInf) continue;
        if (i != *winner && (std::isnan(sel.runner_up) || values[i] > sel.runner_up)) sel.runner_up = values[i];
        if (nearly_equal(values[i], sel.value)) sel.near_ties.emplace_back(i, values[i]);
    }
    if (refine) refine_selection(kind, posterior, level, grid, sel);
    return sel;
}

std::vector<std::size_t> OptimizationTrace::grid_indices() const {
    std::vector<std::size_t> out;
    out.reserve(iterations.size());
    for (const auto& r : iterations) out.push_back(r.grid_index);
    return out;
}

std::vector<double> OptimizationTrace::best_so_far() const {
    std::vector<double> out;
    double best = std::numeric_limits<double>::infinity();
    for (double v : initial_values) out.push_back(best = std::min(best, v));
    for (const auto& r : iterations) out.push_back(r.best);
    return out;
}

std::vector<Point> default_initial_design(const Region& region) {
    const auto d = region.dim();
    std::vector<Point> design;
    if (d == 1) {
        for (int k = 0; k <= 4; ++k) {
            const double x = k == 4 ? region.upper[0]
                                    : region.lower[0] + (region.upper[0] - region.lower[0]) * (k / 4.0);
            design.push_back(make_point({x}));
        }
        return design;
    }
    const std::size_t corners = std::size_t{1} << d;
    for (std::size_t mask = 0; mask < corners; ++mask) {
        Point x(d);
        for (Eigen::Index k = 0; k < d; ++k) {
            x[k] = (mask >> (d - 1 - k)) & 1U ? region.upper[k] : region.lower[k];
        }
        design.push_back(std::move(x));
    }
    design.push_back(0.5 * (region.lower + region.upper));
    return design;
}

namespace {

EvaluationHistory initial_history(const Objective& objective, const Region& region,
                                  const std::vector<Point>& design) {
    if (design.empty()) throw InvalidArgument("initial design must contain at least one point");
    std::vector<WideReal> values;
    values.reserve(design.size());
    for (const auto& x : design) {
        WideReal y = objective(x);
        if (!boost::multiprecision::isfinite(y)) {
            throw ObjectiveError("objective returned a non-finite value at " + format_point(x));
        }
        values.push_back(std::move(y));
    }
    return {region, design, std::move(values)};
}

}  // namespace

SequentialOptimizer::SequentialOptimizer(Algorithm algorithm, Objective objective, const Region& region,
                                         const std::vector<Point>& initial_design, OptimizerConfig config)
    : algorithm_(algorithm),
      objective_(std::move(objective)),
      config_(std::move(config)),
      grid_(region, config_.resolution.empty() ? CandidateGrid::default_resolution(region.dim())
                                               : config_.resolution),
      history_(initial_history(objective_, region, initial_design)) {
    if (config_.estimator == Estimator::sample && initial_design.size() < 2) {
        throw InvalidArgument("the sample estimator needs an initial design of at least two points");
    }
    if (!(config_.epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    trace_.algorithm = algorithm_;
    trace_.initial_points = initial_design;
    for (const auto& v : history_.values()) trace_.initial_values.push_back(static_cast<double>(v));
    best_ = static_cast<double>(history_.min_value());
}

Proposal SequentialOptimizer::propose() const {
    const SurrogatePosterior posterior(history_, config_.kernel, config_.estimator);
    Proposal p;
    p.parameters = posterior.parameters();
    p.level = aspiration(history_, p.parameters, config_.epsilon);

    if (!(p.parameters.sigma2 > 0.0)) {
        // constant data: the criterion is undefined, explore in grid order
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            if (history_.contains_point(grid_[i])) continue;
            p.selection.grid_index = i;
            p.selection.point = grid_[i];
            p.selection.value = std::numeric_limits<double>::quiet_NaN();
            p.selection.runner_up = std::numeric_limits<double>::quiet_NaN();
            p.selection.fallback = true;
            return p;
        }
        throw NoCandidateError("every grid candidate has already been evaluated");
    }
    p.selection = argmax_criterion(criterion_for(algorithm_), posterior, p.level, grid_, config_.refine);
    return p;
}

Proposal SequentialOptimizer::reselect(const Proposal& proposal, std::size_t grid_index) const {
    for (const auto& [index, value] : proposal.selection.near_ties) {
        if (index != grid_index) continue;
        Proposal out = proposal;
        out.selection.grid_index = index;
        out.selection.point = grid_[index];
        out.selection.value = value;
        out.selection.refined = false;
        return out;
    }
    throw InvalidArgument("grid index " + std::to_string(grid_index) + " is not tied with the selected candidate");
}

WideReal SequentialOptimizer::evaluate(const Point& x) const {
    WideReal y = objective_(x);
    if (!boost::multiprecision::isfinite(y)) {
        throw ObjectiveError("objective returned a non-finite value at " + format_point(x));
    }
    return y;
}

void SequentialOptimizer::commit(const Proposal& proposal) {
    const Point& x = proposal.selection.point;
    const WideReal y = evaluate(x);
    history_.append(x, y);

    IterationRecord r;
    r.iteration = static_cast<int>(trace_.iterations.size()) + 1;
    r.grid_index = proposal.selection.grid_index;
    r.point = x;
    r.y = static_cast<double>(y);
    r.criterion = proposal.selection.value;
    r.mu = proposal.parameters.mu;
    r.sigma2 = proposal.parameters.sigma2;
    r.y_on = proposal.level.y_on;
    r.best = best_ = static_cast<double>(history_.min_value());
    r.fallback = proposal.selection.fallback;
    trace_.iterations.push_back(std::move(r));
}

OptimizationTrace run(Algorithm algorithm, const Objective& objective, const Region& region,
                      const std::vector<Point>& initial_design, int budget, const OptimizerConfig& config) {
    if (budget < 0) throw InvalidArgument("budget must be non-negative");
    SequentialOptimizer opt(algorithm, objective, region, initial_design, config);
    for (int i = 0; i < budget; ++i) opt.step();
    return opt.trace();
}

}  // namespace sgo
