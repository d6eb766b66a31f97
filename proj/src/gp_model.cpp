#include "sgo/gp_model.hpp"

#include "sgo/errors.hpp"

#include <boost/multiprecision/number.hpp>

#include <cmath>
#include <string>

namespace sgo {

namespace {

bool is_finite(const WideReal& v) { return boost::multiprecision::isfinite(v); }

std::vector<WideReal> widen(const std::vector<double>& values) {
    return {values.begin(), values.end()};
}

}  // namespace

EvaluationHistory::EvaluationHistory(Region region, std::vector<Point> points,
                                     std::vector<WideReal> values)
    : region_(std::move(region)) {
    if (points.empty()) throw InvalidArgument("evaluation history needs at least one point");
    if (points.size() != values.size()) {
        throw InvalidArgument("evaluation history: " + std::to_string(points.size()) + " points but " +
                              std::to_string(values.size()) + " values");
    }
    points_.reserve(points.size());
    values_.reserve(values.size());
    for (std::size_t i = 0; i < points.size(); ++i) append(points[i], values[i]);
}

EvaluationHistory::EvaluationHistory(Region region, std::vector<Point> points,
                                     const std::vector<double>& values)
    : EvaluationHistory(std::move(region), std::move(points), widen(values)) {}

void EvaluationHistory::check_new_point(const Point& x) const {
    if (x.size() != region_.dim()) {
        throw InvalidArgument("point " + format_point(x) + " has the wrong dimension");
    }
    if (!x.allFinite()) throw InvalidArgument("point " + format_point(x) + " is not finite");
    if (!region_.contains(x)) {
        throw InvalidArgument("point " + format_point(x) + " lies outside the feasible region");
    }
    if (contains_point(x)) {
        throw DuplicatePointsError("point " + format_point(x) + " duplicates an earlier point");
    }
}

void EvaluationHistory::append(const Point& x, const WideReal& y) {
    check_new_point(x);
    if (!is_finite(y)) throw InvalidArgument("non-finite value at " + format_point(x));
    points_.push_back(x);
    values_.push_back(y);
    if (values_.size() == 1 || y < values_[argmin_]) argmin_ = values_.size() - 1;
}

Eigen::VectorXd EvaluationHistory::offsets() const {
    const WideReal& lowest = min_value();
    Eigen::VectorXd d(static_cast<Eigen::Index>(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        d[static_cast<Eigen::Index>(i)] = static_cast<double>(WideReal(values_[i] - lowest));
    }
    return d;
}

Eigen::VectorXd EvaluationHistory::values_as_double() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = static_cast<double>(values_[i]);
    }
    return v;
}

bool EvaluationHistory::contains_point(const Point& x) const {
    for (const auto& p : points_) {
        if (max_norm_distance(p, x) < kDuplicateThreshold) return true;
    }
    return false;
}

CorrelationKernel::CorrelationKernel(KernelFamily family, double decay)
    : family_(family), decay_(decay) {
    if (!(decay > 0.0) || !std::isfinite(decay)) {
        throw InvalidArgument("kernel decay rate must be positive and finite");
    }
}

double CorrelationKernel::operator()(const Point& a, const Point& b) const {
    const double r2 = (a - b).squaredNorm();
    switch (family_) {
        case KernelFamily::exponential:
            return std::exp(-decay_ * std::sqrt(r2));
        case KernelFamily::squared_exponential:
            return std::exp(-decay_ * r2);
    }
    return 0.0;
}

CorrelationKernel default_kernel() { return {KernelFamily::exponential, 5.0}; }

Eigen::MatrixXd correlation_matrix(const std::vector<Point>& points, const CorrelationKernel& kernel) {
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd sigma(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        sigma(i, i) = 1.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            const auto& xi = points[static_cast<std::size_t>(i)];
            const auto& xj = points[static_cast<std::size_t>(j)];
            if (max_norm_distance(xi, xj) < kDuplicateThreshold) {
                throw DuplicatePointsError("points " + std::to_string(j) + " and " + std::to_string(i) +
                                           " coincide; the correlation matrix would be singular");
            }
            sigma(i, j) = sigma(j, i) = kernel(xi, xj);
        }
    }
    return sigma;
}

Eigen::MatrixXd correlation_matrix(const EvaluationHistory& history, const CorrelationKernel& kernel) {
    return correlation_matrix(history.points(), kernel);
}

CorrelationFactor::CorrelationFactor(const Eigen::MatrixXd& sigma) {
    llt_.compute(sigma);
    if (llt_.info() == Eigen::Success) return;
    const auto n = sigma.rows();
    for (double lambda = kInitialJitter; lambda <= kMaxJitter * (1 + 1e-9); lambda *= 10.0) {
        llt_.compute(sigma + lambda * Eigen::MatrixXd::Identity(n, n));
        if (llt_.info() == Eigen::Success) {
            jitter_ = lambda;
            return;
        }
    }
    throw IllConditionedError("correlation matrix is not positive definite even with jitter " +
                              std::to_string(kMaxJitter));
}

Eigen::VectorXd CorrelationFactor::solve(const Eigen::VectorXd& rhs) const { return llt_.solve(rhs); }

Eigen::MatrixXd CorrelationFactor::inverse() const {
    return llt_.solve(Eigen::MatrixXd::Identity(llt_.rows(), llt_.cols()));
}

Eigen::VectorXd CorrelationFactor::solve_lower(const Eigen::VectorXd& rhs) const {
    return llt_.matrixL().solve(rhs);
}

double CorrelationFactor::quadratic_form(const Eigen::VectorXd& rhs) const {
    return solve_lower(rhs).squaredNorm();
}

namespace {

ModelParameters finish(const EvaluationHistory& history, double mu_offset, double sigma2,
                       Estimator estimator) {
    ModelParameters p;
    p.estimator = estimator;
    p.mu_offset = mu_offset;
    p.sigma2 = sigma2;
    p.mu = static_cast<double>(WideReal(history.min_value() + WideReal(mu_offset)));
    return p;
}

}  // namespace

ModelParameters estimate_sample(const EvaluationHistory& history) {
    const auto n = static_cast<double>(history.size());
    if (history.size() < 2) {
        throw InsufficientDataError("sample variance needs at least two observations");
    }
    const Eigen::VectorXd d = history.offsets();
    const double mean = d.mean();
    const double sigma2 = (d.array() - mean).square().sum() / (n - 1.0);
    return finish(history, mean, sigma2, Estimator::sample);
}

ModelParameters estimate_mle(const EvaluationHistory& history, const CorrelationFactor& factor) {
    if (factor.size() != static_cast<Eigen::Index>(history.size())) {
        throw InvalidArgument("correlation factor does not match the history size");
    }
    const Eigen::VectorXd d = history.offsets();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(d.size());
    const Eigen::VectorXd u = factor.solve(ones);
    const double mu_offset = u.dot(d) / u.dot(ones);
    const Eigen::VectorXd residual = d.array() - mu_offset;
    const double sigma2 = factor.quadratic_form(residual) / static_cast<double>(d.size());
    return finish(history, mu_offset, sigma2, Estimator::mle);
}

ModelParameters estimate_mle(const EvaluationHistory& history, const CorrelationKernel& kernel) {
    return estimate_mle(history, CorrelationFactor(correlation_matrix(history, kernel)));
}

ModelParameters estimate(const EvaluationHistory& history, const CorrelationKernel& kernel,
                         Estimator estimator) {
    return estimator == Estimator::mle ? estimate_mle(history, kernel) : estimate_sample(history);
}

SurrogatePosterior::SurrogatePosterior(EvaluationHistory history, CorrelationKernel kernel,
                                       ModelParameters parameters)
    : history_(std::move(history)),
      kernel_(kernel),
      factor_(correlation_matrix(history_, kernel_)),
      parameters_(parameters) {
    alpha_ = factor_.solve(history_.offsets().array() - parameters_.mu_offset);
}

SurrogatePosterior::SurrogatePosterior(EvaluationHistory history, CorrelationKernel kernel,
                                       Estimator estimator)
    : history_(std::move(history)),
      kernel_(kernel),
      factor_(correlation_matrix(history_, kernel_)) {
    parameters_ = estimator == Estimator::mle ? estimate_mle(history_, factor_)
                                              : estimate_sample(history_);
    alpha_ = factor_.solve(history_.offsets().array() - parameters_.mu_offset);
}

Eigen::VectorXd SurrogatePosterior::correlation_row(const Point& x) const {
    const auto& pts = history_.points();
    Eigen::VectorXd row(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) row[static_cast<Eigen::Index>(i)] = kernel_(pts[i], x);
    return row;
}

Eigen::VectorXd SurrogatePosterior::kriging_weights(const Point& x) const {
    return factor_.solve(correlation_row(x));
}

ConditionalMoments SurrogatePosterior::moments(const Point& x) const {
    const Eigen::VectorXd row = correlation_row(x);
    const double explained = factor_.solve_lower(row).squaredNorm();
    const double shift = alpha_.dot(row);

    ConditionalMoments m;
    m.mean_offset = parameters_.mu_offset + shift;
    m.mean = parameters_.mu + shift;
    double unit = 1.0 - explained;
    if (unit < 0.0) {
        m.ill_conditioned = unit < -kClampTolerance;
        unit = 0.0;
    }
    m.unit_variance = unit;
    m.variance = parameters_.sigma2 * unit;
    return m;
}

}  // namespace sgo
