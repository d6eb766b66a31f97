#include "sgo/acquisition.hpp"

#include "sgo/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sgo {

AspirationLevel aspiration(const EvaluationHistory& history, const ModelParameters& parameters,
                           double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidArgument("aspiration epsilon must be positive and finite");
    }
    AspirationLevel level;
    level.epsilon = epsilon;
    level.margin = -epsilon * std::sqrt(parameters.sigma2);
    level.y_on = static_cast<double>(WideReal(history.min_value() + WideReal(level.margin)));
    return level;
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

double normal_pdf(double t) { return std::exp(-0.5 * t * t) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2); }

double expected_improvement(double gap, double s) {
    if (!(s > 0.0)) return std::max(gap, 0.0);
    const double u = gap / s;
    return s * (u * normal_cdf(u) + normal_pdf(u));
}

namespace {

struct Standardized {
    double gap = 0.0;  // y_on - m_n(x)
    double s = 0.0;
    bool degenerate = false;
};

Standardized standardize(const SurrogatePosterior& posterior, const AspirationLevel& level,
                         const Point& x) {
    const ConditionalMoments m = posterior.moments(x);
    const double sigma_hat = std::sqrt(posterior.parameters().sigma2);
    Standardized st;
    st.gap = level.margin - m.mean_offset;
    st.s = sigma_hat * std::sqrt(m.unit_variance);
    // s_n vanishes exactly at history points, but rounding leaves ~1e-8 there
    st.degenerate = !(sigma_hat > 0.0) || std::sqrt(m.unit_variance) <= kDegenerateRatio ||
                    posterior.history().contains_point(x);
    return st;
}

}  // namespace

CriterionValue p_criterion(const SurrogatePosterior& posterior, const AspirationLevel& level,
                           const Point& x) {
    const Standardized st = standardize(posterior, level, x);
    CriterionValue v{CriterionKind::probability_of_improvement, 0.0, st.degenerate};
    if (st.degenerate) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        v.value = st.gap < 0.0 ? -inf : inf;
    } else {
        v.value = st.gap / st.s;
    }
    return v;
}

CriterionValue expected_improvement(const SurrogatePosterior& posterior, const AspirationLevel& level,
                                    const Point& x) {
    const Standardized st = standardize(posterior, level, x);
    return {CriterionKind::expected_improvement,
            expected_improvement(st.gap, st.degenerate ? 0.0 : st.s), st.degenerate};
}

CriterionValue evaluate_criterion(CriterionKind kind, const SurrogatePosterior& posterior,
                                  const AspirationLevel& level, const Point& x) {
    return kind == CriterionKind::probability_of_improvement ? p_criterion(posterior, level, x)
                                                             : expected_improvement(posterior, level, x);
}

}  // namespace sgo
