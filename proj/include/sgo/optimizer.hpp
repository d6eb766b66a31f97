#pragma once

#include "sgo/acquisition.hpp"
#include "sgo/gp_model.hpp"
#include "sgo/grid.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sgo {

enum class Algorithm { p_algorithm, one_step_bayes };

[[nodiscard]] CriterionKind criterion_for(Algorithm algorithm);
[[nodiscard]] std::string to_string(Algorithm algorithm);

/// Criterion values closer than this (relative) are reported as ties.
inline constexpr double kNearTieRelative = 1e-9;

[[nodiscard]] bool nearly_equal(double a, double b, double relative = kNearTieRelative);
/// Criterion values this close (relative) count as equal, so that ties which
/// are exact in real arithmetic go to the lowest grid index whatever the
/// rounding.
inline constexpr double kExactTieRelative = 1e-12;

struct Selection {
    std::size_t grid_index = 0;
    Point point;
    double value = 0.0;
    /// Best value among the other admissible candidates; NaN if there is none.
    double runner_up = 0.0;
    /// Admissible candidates (winner included) within kNearTieRelative of the
    /// winning value, in grid order.
    std::vector<std::pair<std::size_t, double>> near_ties;
    /// True when the winner came from the sigma2 = 0 fallback rule.
    bool fallback = false;
    bool refined = false;

    [[nodiscard]] bool is_near_tie() const { return near_ties.size() > 1; }
};

/// Lowest index whose value ties with `top` (the largest value); values of
/// -inf are inadmissible. Empty when `top` is -inf.
[[nodiscard]] std::optional<std::size_t> lowest_tied_index(const std::vector<double>& values,
                                                           double top);

/// Grid argmax of a criterion. Candidates within kDuplicateThreshold of a
/// history point are skipped, degenerate candidates rank below all others,
/// and ties (within kExactTieRelative) go to the lowest grid index. With `refine`, the winner is
/// polished by a fixed-length local search inside its neighbouring cells.
/// Throws NoCandidateError when nothing non-degenerate is left.
[[nodiscard]] Selection argmax_criterion(CriterionKind kind, const SurrogatePosterior& posterior,
                                         const AspirationLevel& level, const CandidateGrid& grid,
                                         bool refine = false);

struct OptimizerConfig {
    CorrelationKernel kernel = default_kernel();
    Estimator estimator = Estimator::mle;
    double epsilon = kDefaultEpsilon;
    /// Points per axis; empty selects CandidateGrid::default_resolution.
    std::vector<int> resolution;
    bool refine = false;
};

struct IterationRecord {
    int iteration = 0;
    std::size_t grid_index = 0;
    Point point;
    double y = 0.0;
    double criterion = 0.0;
    double mu = 0.0;
    double sigma2 = 0.0;
    double y_on = 0.0;
    double best = 0.0;
    bool fallback = false;
};

struct OptimizationTrace {
    Algorithm algorithm = Algorithm::p_algorithm;
    std::vector<Point> initial_points;
    std::vector<double> initial_values;
    std::vector<IterationRecord> iterations;

    [[nodiscard]] std::vector<std::size_t> grid_indices() const;
    /// Running minimum over the initial design followed by every iteration.
    [[nodiscard]] std::vector<double> best_so_far() const;
};

/// Five equispaced points including both ends in 1-D; corners plus centre
/// for d > 1.
[[nodiscard]] std::vector<Point> default_initial_design(const Region& region);

/// Everything decided for the next evaluation, before the objective is called.
struct Proposal {
    Selection selection;
    ModelParameters parameters;
    AspirationLevel level;
};

/// The sequential loop, one step at a time: propose() builds the model and
/// picks the next point, commit() evaluates the objective there.
class SequentialOptimizer {
public:
    SequentialOptimizer(Algorithm algorithm, Objective objective, const Region& region,
                        const std::vector<Point>& initial_design, OptimizerConfig config = {});

    [[nodiscard]] Proposal propose() const;

    /// Replace the selected candidate by another member of its near-tie set.
    [[nodiscard]] Proposal reselect(const Proposal& proposal, std::size_t grid_index) const;

    /// Throws ObjectiveError if the objective is not finite at the point.
    void commit(const Proposal& proposal);

    void step() { commit(propose()); }

    [[nodiscard]] const OptimizationTrace& trace() const { return trace_; }
    [[nodiscard]] const EvaluationHistory& history() const { return history_; }
    [[nodiscard]] const CandidateGrid& grid() const { return grid_; }
    [[nodiscard]] const OptimizerConfig& config() const { return config_; }

private:
    [[nodiscard]] WideReal evaluate(const Point& x) const;

    Algorithm algorithm_;
    Objective objective_;
    OptimizerConfig config_;
    CandidateGrid grid_;
    EvaluationHistory history_;
    OptimizationTrace trace_;
    double best_ = 0.0;
};

[[nodiscard]] OptimizationTrace run(Algorithm algorithm, const Objective& objective,
                                    const Region& region, const std::vector<Point>& initial_design,
                                    int budget, const OptimizerConfig& config = {});

}  // namespace sgo
