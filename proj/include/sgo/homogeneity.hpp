#pragma once

#include "sgo/direct1d.hpp"
#include "sgo/extended_numeral.hpp"
#include "sgo/optimizer.hpp"

#include <iosfwd>
#include <vector>

namespace sgo {

struct StepComparison {
    int step = 0;
    /// Selected grid index (P/EI) or subdivided interval indices (DIRECT).
    std::vector<std::size_t> selected_f;
    std::vector<std::size_t> selected_h;
    bool match = false;
    /// The best two candidates were within kNearTieRelative in either run.
    bool near_tie = false;
};

struct HomogeneityReport {
    std::vector<StepComparison> steps;

    /// Every step matched or differed only inside a near tie.
    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::size_t mismatches() const;
    [[nodiscard]] std::size_t ties() const;
    /// First step that neither matched nor was a near tie, or -1.
    [[nodiscard]] int first_mismatch() const;
};

/// Header: step,index_f,index_h,match,near_tie
void write_report_csv(const HomogeneityReport& report, std::ostream& out);

/// Runs the optimizer on f and on h = a f + b side by side (h evaluated in
/// quad precision) and compares the selected grid indices step by step.
/// When the runs pick different members of a shared near tie, the scaled
/// run is moved onto the base run's choice so that later steps remain
/// comparable; the step is reported as a tie.
[[nodiscard]] HomogeneityReport compare_runs(Algorithm algorithm, const Objective& f,
                                             const Region& region,
                                             const std::vector<Point>& initial_design, int budget,
                                             double a, double b, const OptimizerConfig& config = {});

/// Conventional run on f against scaled_criterion_run with extended a, b.
[[nodiscard]] HomogeneityReport compare_extended(Algorithm algorithm, const Objective& f,
                                                 const Region& region,
                                                 const std::vector<Point>& initial_design,
                                                 int budget, const ExtendedNumeral& a,
                                                 const ExtendedNumeral& b,
                                                 const OptimizerConfig& config = {});

/// Fixed-design comparison on a value table: the next point planned from
/// (points, values) against the one planned from (points, a * values + b).
/// Finite a, b use the conventional model in quad precision; otherwise the
/// extended-arithmetic selection. Reports a single step.
[[nodiscard]] HomogeneityReport compare_table(Algorithm algorithm, const Region& region,
                                              const std::vector<Point>& points,
                                              const std::vector<double>& values,
                                              const ExtendedNumeral& a, const ExtendedNumeral& b,
                                              const OptimizerConfig& config = {});

/// DIRECT on f and on a f + b; compares the sets of subdivided intervals.
[[nodiscard]] HomogeneityReport compare_direct(const direct::Function1d& f, double lower,
                                               double upper, double epsilon, int budget, double a,
                                               double b);

/// Curves of the one-step planning example on a regular grid over [0, 1].
struct Fig1Reproduction {
    std::vector<double> x;
    std::vector<double> m_f, s_f, crit_f;
    std::vector<double> m_phi, s_phi, crit_phi;
    std::vector<bool> degenerate;
    double y_on = 0.0;
    double z_on = 0.0;
    /// max |printed phi - (a f + b)|.
    double printed_phi_error = 0.0;
    /// max relative difference between the two criterion curves.
    double max_curve_difference = 0.0;
    /// |z_on - (a y_on + b)| / |z_on|.
    double aspiration_error = 0.0;
    std::size_t argmax_f = 0;
    std::size_t argmax_phi = 0;
};

[[nodiscard]] Fig1Reproduction reproduce_fig1(Estimator estimator = Estimator::mle,
                                              double epsilon = kDefaultEpsilon,
                                              int resolution = 1001);

}  // namespace sgo
