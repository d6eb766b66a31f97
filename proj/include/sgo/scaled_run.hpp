#pragma once

#include "sgo/extended_numeral.hpp"
#include "sgo/optimizer.hpp"

#include <vector>

namespace sgo {

/// Evidence that the extended-arithmetic criterion reduced to an ordinary
/// real number at every candidate of one step.
struct StepCertificate {
    std::size_t candidates = 0;
    /// Largest non-grade-0 coefficient left in a standardized criterion,
    /// relative to max(1, |grade-0 part|).
    double max_residual = 0.0;
    /// Largest difference between the collapsed criterion and the criterion
    /// computed conventionally from the unscaled values, relative to
    /// max(1, |value|).
    double max_deviation = 0.0;
    /// Some coefficient was dropped by cancellation during the step.
    bool cancellation = false;
    /// max_residual and max_deviation both within kCollapseTolerance.
    bool collapsed = false;
};

inline constexpr double kCollapseTolerance = 1e-9;

struct ScaledStep {
    int iteration = 0;
    std::size_t grid_index = 0;
    Point point;
    double f_value = 0.0;
    ExtendedNumeral z_value;  // a * f + b
    ExtendedNumeral mu;
    ExtendedNumeral sigma;
    ExtendedNumeral z_on;
    /// Collapsed standardized criterion (p-algorithm) or improvement / a (one-step Bayes).
    double criterion = 0.0;
    bool fallback = false;
    StepCertificate certificate;
};

struct ScaledRunResult {
    /// Grid indices and points of the scaled run. Numeric columns are filled
    /// only where the extended quantity is an ordinary real, NaN otherwise.
    OptimizationTrace trace;
    std::vector<ExtendedNumeral> initial_values;
    std::vector<ScaledStep> steps;
};

/// Runs the sequential loop on z = a * f(x) + b with every value-dependent
/// quantity (z_i, mu, sigma, z_on, conditional mean, criterion) held as an
/// extended numeral. The correlation structure does not depend on values and
/// is shared with the conventional model. `a` must be a positive single
/// term c * G^p; otherwise UnsupportedOperation is thrown. A criterion that
/// fails to collapse to grade 0 raises InvariantViolation.
[[nodiscard]] ScaledRunResult scaled_criterion_run(Algorithm algorithm, const Objective& f,
                                                   const Region& region,
                                                   const std::vector<Point>& initial_design,
                                                   int budget, const ExtendedNumeral& a,
                                                   const ExtendedNumeral& b,
                                                   const OptimizerConfig& config = {});

/// One selection from a fixed table of f values, without evaluating
/// anything: the planning step of the scaled loop on z = a * f + b.
/// `f_value` and `z_value` of the result are left unset.
[[nodiscard]] ScaledStep scaled_next_point(Algorithm algorithm, const Region& region,
                                           const std::vector<Point>& points,
                                           const std::vector<double>& f_values,
                                           const ExtendedNumeral& a, const ExtendedNumeral& b,
                                           const OptimizerConfig& config = {});

}  // namespace sgo
