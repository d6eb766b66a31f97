#pragma once

#include "sgo/gp_model.hpp"

namespace sgo {

/// Target level y_on = min_i y_i - epsilon * sigma_hat.
struct AspirationLevel {
    double y_on = 0.0;
    double epsilon = 0.1;
    /// y_on - min_i y_i, i.e. -epsilon * sigma_hat, kept in the same frame as
    /// ConditionalMoments::mean_offset.
    double margin = 0.0;
};

inline constexpr double kDefaultEpsilon = 0.1;

/// Throws InvalidArgument unless epsilon > 0.
[[nodiscard]] AspirationLevel aspiration(const EvaluationHistory& history,
                                         const ModelParameters& parameters, double epsilon);

enum class CriterionKind { probability_of_improvement, expected_improvement };

struct CriterionValue {
    CriterionKind kind = CriterionKind::probability_of_improvement;
    double value = 0.0;
    /// s_n(x) is (numerically) zero: the candidate carries no uncertainty.
    bool degenerate = false;
};

/// Candidates with s_n(x) <= kDegenerateRatio * sigma_hat, and history points
/// themselves, are degenerate.
inline constexpr double kDegenerateRatio = 1e-12;

/// Standard normal distribution function.
[[nodiscard]] double normal_cdf(double t);
[[nodiscard]] double normal_pdf(double t);

/// (y_on - m_n(x)) / s_n(x). At degenerate points the value is -inf when
/// m_n(x) > y_on and +inf otherwise.
[[nodiscard]] CriterionValue p_criterion(const SurrogatePosterior& posterior,
                                         const AspirationLevel& level, const Point& x);

/// E max(y_on - xi(x), 0) under the conditional Gaussian:
/// s * (u Phi(u) + phi(u)) with u = (y_on - m) / s.
[[nodiscard]] CriterionValue expected_improvement(const SurrogatePosterior& posterior,
                                                  const AspirationLevel& level, const Point& x);

[[nodiscard]] CriterionValue evaluate_criterion(CriterionKind kind,
                                                const SurrogatePosterior& posterior,
                                                const AspirationLevel& level, const Point& x);

/// Closed-form improvement for gap = y_on - m and standard deviation s;
/// max(gap, 0) when s == 0.
[[nodiscard]] double expected_improvement(double gap, double s);

}  // namespace sgo
