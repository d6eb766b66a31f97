#include "sgo/objectives.hpp"

#include "sgo/errors.hpp"

#include <cmath>
#include <numbers>

namespace sgo {

Objective BuiltinObjective::objective() const {
    return [f = f](const Point& x) -> WideReal { return f(x); };
}

namespace {

double fig1_table(const Point& x) {
    for (std::size_t i = 0; i < fig1::kPoints.size(); ++i) {
        if (std::abs(x[0] - fig1::kPoints[i]) < kDuplicateThreshold) return fig1::kValues[i];
    }
    throw InvalidArgument("the fig1 table has no value at " + format_point(x));
}

std::vector<BuiltinObjective> make_builtins() {
    using std::numbers::pi;
    std::vector<BuiltinObjective> v;
    v.push_back({"sin3x", "sin(3x) + x^2 on [-1, 1]", Region(-1.0, 1.0),
                 [](const Point& x) { return std::sin(3.0 * x[0]) + x[0] * x[0]; }, false});
    v.push_back({"rastrigin1d", "10 + x^2 - 10 cos(2 pi x) on [-5.12, 5.12]", Region(-5.12, 5.12),
                 [](const Point& x) { return 10.0 + x[0] * x[0] - 10.0 * std::cos(2.0 * pi * x[0]); }, false});
    v.push_back({"forrester", "(6x - 2)^2 sin(12x - 4) on [0, 1]", Region(0.0, 1.0),
                 [](const Point& x) {
                     const double t = 6.0 * x[0] - 2.0;
                     return t * t * std::sin(12.0 * x[0] - 4.0);
                 },
                 false});
    v.push_back({"fig1", "five tabulated values on [0, 1]", Region(0.0, 1.0), fig1_table, true});
    v.push_back({"direct-demo", "(x - 0.3)^2 + 1 on [0, 1]", Region(0.0, 1.0),
                 [](const Point& x) { return (x[0] - 0.3) * (x[0] - 0.3) + 1.0; }, false});
    return v;
}

}  // namespace

const std::vector<BuiltinObjective>& builtin_objectives() {
    static const std::vector<BuiltinObjective> all = make_builtins();
    return all;
}

const BuiltinObjective& find_objective(const std::string& name) {
    std::string known;
    for (const auto& o : builtin_objectives()) {
        if (o.name == name) return o;
        known += (known.empty() ? "" : ", ") + o.name;
    }
    throw InvalidArgument("unknown objective '" + name + "' (known: " + known + ")");
}

std::vector<std::string> runnable_objective_names() { return {"sin3x", "rastrigin1d", "forrester"}; }

}  // namespace sgo
