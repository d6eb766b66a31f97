#pragma once

#include "sgo/types.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <vector>

namespace sgo {

/// Observed pairs (x_i, y_i) inside a feasible box.
///
/// Values are stored in quad precision. Everything downstream works with
/// the values measured from the smallest observation (`offsets()`), which
/// are computed once in quad precision and then rounded to double. This
/// keeps the surrogate exact under translations of the data that are many
/// orders of magnitude larger than the spread of the values.
class EvaluationHistory {
public:
    /// Throws InvalidArgument for an empty history, mismatched sizes,
    /// points outside the region or non-finite values, and
    /// DuplicatePointsError for points closer than kDuplicateThreshold.
    EvaluationHistory(Region region, std::vector<Point> points, std::vector<WideReal> values);
    EvaluationHistory(Region region, std::vector<Point> points, const std::vector<double>& values);

    void append(const Point& x, const WideReal& y);

    [[nodiscard]] const Region& region() const { return region_; }
    [[nodiscard]] const std::vector<Point>& points() const { return points_; }
    [[nodiscard]] const std::vector<WideReal>& values() const { return values_; }
    [[nodiscard]] std::size_t size() const { return points_.size(); }

    [[nodiscard]] const WideReal& min_value() const { return values_[argmin_]; }
    [[nodiscard]] std::size_t argmin() const { return argmin_; }

    /// y_i - min_j y_j, rounded to double after an exact-ish quad subtraction.
    [[nodiscard]] Eigen::VectorXd offsets() const;

    /// Values rounded to double.
    [[nodiscard]] Eigen::VectorXd values_as_double() const;

    /// True if x lies within kDuplicateThreshold of a stored point.
    [[nodiscard]] bool contains_point(const Point& x) const;

private:
    void check_new_point(const Point& x) const;

    Region region_;
    std::vector<Point> points_;
    std::vector<WideReal> values_;
    std::size_t argmin_ = 0;
};

enum class KernelFamily { exponential, squared_exponential };

/// Isotropic correlation function rho(x, x') = exp(-c r) or exp(-c r^2),
/// with r the Euclidean distance.
class CorrelationKernel {
public:
    CorrelationKernel(KernelFamily family, double decay);

    [[nodiscard]] double operator()(const Point& a, const Point& b) const;

    [[nodiscard]] KernelFamily family() const { return family_; }
    [[nodiscard]] double decay() const { return decay_; }

private:
    KernelFamily family_;
    double decay_;
};

/// Exponential kernel with decay 5, the setting of the one-dimensional
/// worked example.
[[nodiscard]] CorrelationKernel default_kernel();

/// Sigma[i][j] = rho(x_i, x_j). Throws DuplicatePointsError if two points
/// are closer than kDuplicateThreshold.
[[nodiscard]] Eigen::MatrixXd correlation_matrix(const std::vector<Point>& points,
                                                 const CorrelationKernel& kernel);
[[nodiscard]] Eigen::MatrixXd correlation_matrix(const EvaluationHistory& history,
                                                 const CorrelationKernel& kernel);

/// Cholesky factor of a correlation matrix with escalating diagonal jitter
/// (1e-12, 1e-11, ..., 1e-6) when the plain factorization fails.
class CorrelationFactor {
public:
    static constexpr double kInitialJitter = 1e-12;
    static constexpr double kMaxJitter = 1e-6;

    /// Throws IllConditionedError when even kMaxJitter does not help.
    explicit CorrelationFactor(const Eigen::MatrixXd& sigma);

    [[nodiscard]] Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
    /// Sigma^-1 (of the jittered matrix), from the factor.
    [[nodiscard]] Eigen::MatrixXd inverse() const;
    /// L^{-1} rhs.
    [[nodiscard]] Eigen::VectorXd solve_lower(const Eigen::VectorXd& rhs) const;
    /// rhs^T Sigma^{-1} rhs.
    [[nodiscard]] double quadratic_form(const Eigen::VectorXd& rhs) const;

    [[nodiscard]] double jitter() const { return jitter_; }
    [[nodiscard]] Eigen::Index size() const { return llt_.rows(); }

private:
    Eigen::LLT<Eigen::MatrixXd> llt_;
    double jitter_ = 0.0;
};

enum class Estimator { sample, mle };

struct ModelParameters {
    double mu = 0.0;
    double sigma2 = 0.0;
    Estimator estimator = Estimator::mle;
    /// mu - min_i y_i, free of the cancellation that `mu` may suffer when the
    /// data carry a large translation.
    double mu_offset = 0.0;
};

/// Unbiased sample mean and variance (divisor n - 1).
/// Throws InsufficientDataError for n = 1.
[[nodiscard]] ModelParameters estimate_sample(const EvaluationHistory& history);

/// Maximum likelihood estimates for a known correlation structure:
/// mu = (1^T S^-1 y) / (1^T S^-1 1), sigma2 = (y - mu)^T S^-1 (y - mu) / n.
[[nodiscard]] ModelParameters estimate_mle(const EvaluationHistory& history,
                                           const CorrelationKernel& kernel);
/// Same, reusing an existing factor of the history's correlation matrix.
[[nodiscard]] ModelParameters estimate_mle(const EvaluationHistory& history,
                                           const CorrelationFactor& factor);

[[nodiscard]] ModelParameters estimate(const EvaluationHistory& history,
                                       const CorrelationKernel& kernel,
                                       Estimator estimator);

struct ConditionalMoments {
    double mean = 0.0;
    double variance = 0.0;
    /// mean - min_i y_i.
    double mean_offset = 0.0;
    /// 1 - Upsilon Sigma^-1 Upsilon^T after clamping; variance = sigma2 * this.
    double unit_variance = 0.0;
    /// Set when the raw variance fell below -1e-10 sigma2 before clamping.
    bool ill_conditioned = false;
};

/// Conditional (posterior) mean and variance of the Gaussian model given
/// the history. Immutable once built, so concurrent queries are safe.
class SurrogatePosterior {
public:
    static constexpr double kClampTolerance = 1e-10;

    SurrogatePosterior(EvaluationHistory history, CorrelationKernel kernel, Estimator estimator);
    SurrogatePosterior(EvaluationHistory history, CorrelationKernel kernel,
                       ModelParameters parameters);

    [[nodiscard]] ConditionalMoments moments(const Point& x) const;

    /// Upsilon(x) = (rho(x_1, x), ..., rho(x_n, x)).
    [[nodiscard]] Eigen::VectorXd correlation_row(const Point& x) const;
    /// Sigma^{-1} Upsilon(x)^T.
    [[nodiscard]] Eigen::VectorXd kriging_weights(const Point& x) const;

    [[nodiscard]] const EvaluationHistory& history() const { return history_; }
    [[nodiscard]] const CorrelationKernel& kernel() const { return kernel_; }
    [[nodiscard]] const ModelParameters& parameters() const { return parameters_; }
    [[nodiscard]] const CorrelationFactor& factor() const { return factor_; }

private:
    EvaluationHistory history_;
    CorrelationKernel kernel_;
    CorrelationFactor factor_;
    ModelParameters parameters_;
    Eigen::VectorXd alpha_;  // Sigma^{-1} (y - mu)
};

}  // namespace sgo
