#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <functional>
#include <string>

namespace sgo {

using Point = Eigen::VectorXd;

/// Objective values are carried in quad precision so that translations far
/// larger than the spread of the values (e.g. 1e-8 * f + 1e9) keep the
/// information the optimizer needs. Plain doubles convert implicitly.
using WideReal = boost::multiprecision::cpp_bin_float_quad;

using Objective = std::function<WideReal(const Point&)>;

/// Axis-aligned box [lower, upper].
struct Region {
    Point lower;
    Point upper;

    Region() = default;
    Region(Point lo, Point hi);
    /// One-dimensional interval [lo, hi].
    Region(double lo, double hi);

    [[nodiscard]] Eigen::Index dim() const { return lower.size(); }
    [[nodiscard]] bool contains(const Point& x) const;
};

/// Points closer than this in the max-norm are treated as the same point.
inline constexpr double kDuplicateThreshold = 1e-12;

[[nodiscard]] double max_norm_distance(const Point& a, const Point& b);

[[nodiscard]] Point make_point(std::initializer_list<double> coords);

[[nodiscard]] std::string format_point(const Point& x);

}  // namespace sgo
