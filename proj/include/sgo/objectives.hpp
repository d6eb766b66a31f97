#pragma once

#include "sgo/types.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace sgo {

struct BuiltinObjective {
    std::string name;
    std::string description;
    Region region;
    std::function<double(const Point&)> f;
    /// Defined only at a fixed set of points (a value table).
    bool tabulated = false;

    [[nodiscard]] Objective objective() const;
};

/// sin3x, rastrigin1d, forrester, fig1 (table), direct-demo.
[[nodiscard]] const std::vector<BuiltinObjective>& builtin_objectives();
/// Throws InvalidArgument for an unknown name.
[[nodiscard]] const BuiltinObjective& find_objective(const std::string& name);
/// The three loop-capable multimodal objectives.
[[nodiscard]] std::vector<std::string> runnable_objective_names();

/// Data of the five-point worked example.
namespace fig1 {
inline constexpr std::array<double, 5> kPoints{0.0, 0.2, 0.5, 0.9, 1.0};
inline constexpr std::array<double, 5> kValues{-0.8, -0.9, -0.65, -0.85, -0.55};
/// Second data set as printed (two decimals).
inline constexpr std::array<double, 5> kPrintedPhi{0.0, -0.4, 0.6, -0.2, 0.99};
inline constexpr double kA = 3.9765;
inline constexpr double kB = 3.1804;
}  // namespace fig1

}  // namespace sgo
