#include "sgo/direct1d.hpp"

#include "sgo/errors.hpp"
#include "sgo/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace sgo::direct {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Interval Interval::make(double a, double b, double fc) {
    return {a, b, 0.5 * (a + b), 0.5 * (b - a), fc};
}

double Partition::f_min() const { return intervals.at(argmin()).fc; }

std::size_t Partition::argmin() const {
    if (intervals.empty()) throw InvalidArgument("empty partition");
    std::size_t best = 0;
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        if (intervals[i].fc < intervals[best].fc) best = i;
    }
    return best;
}

void Partition::validate() const {
    if (intervals.empty()) throw InvalidArgument("partition must contain at least one interval");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("DIRECT epsilon must lie in (0, 1)");
    for (const auto& iv : intervals) {
        if (!(iv.a < iv.b) || !(iv.delta > 0.0) || !std::isfinite(iv.fc)) {
            throw InvalidArgument("partition intervals need a < b, delta > 0 and a finite value");
        }
    }
}

bool same_length(double delta_a, double delta_b) {
    return std::abs(delta_a - delta_b) <= 1e-12 * std::max(delta_a, delta_b);
}

Optimality potentially_optimal(const Partition& partition, std::size_t j) {
    const auto& ivs = partition.intervals;
    if (j >= ivs.size()) throw InvalidArgument("interval index out of range");
    const Interval& target = ivs[j];
    const double f_min = partition.f_min();

    Optimality out;
    out.lower = (target.fc - f_min + partition.epsilon * std::abs(f_min)) / target.delta;
    out.upper = kInf;
    for (std::size_t i = 0; i < ivs.size(); ++i) {
        if (i == j) continue;
        const Interval& other = ivs[i];
        if (same_length(other.delta, target.delta)) {
            if (other.fc < target.fc) {
                out.reason = "interval " + std::to_string(i) + " has the same length and a smaller value";
                return out;
            }
        } else if (other.delta < target.delta) {
            out.lower = std::max(out.lower, (target.fc - other.fc) / (target.delta - other.delta));
        } else {
            out.upper = std::min(out.upper, (other.fc - target.fc) / (other.delta - target.delta));
        }
    }
    if (!(out.upper > 0.0)) {
        out.reason = "a longer interval has a value no larger, so no positive L exists";
        return out;
    }
    if (out.lower > out.upper + kFeasibilitySlack * std::max(1.0, std::abs(out.upper))) {
        out.reason = "lower bound on L exceeds the upper bound";
        return out;
    }
    out.optimal = true;
    return out;
}

std::vector<std::size_t> potentially_optimal_set(const Partition& partition) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < partition.intervals.size(); ++j) {
        if (potentially_optimal(partition, j).optimal) out.push_back(j);
    }
    return out;
}

ShiftThreshold counterexample_shift(const Partition& partition, std::size_t j) {
    const auto& ivs = partition.intervals;
    if (j >= ivs.size()) throw InvalidArgument("interval index out of range");
    for (const auto& iv : ivs) {
        if (!(iv.fc > 0.0)) throw PreconditionError("all interval values must be positive");
    }
    const Interval& target = ivs[j];
    ShiftThreshold t;
    double best_slope = kInf;
    for (std::size_t i = 0; i < ivs.size(); ++i) {
        const Interval& other = ivs[i];
        if (i == j || same_length(other.delta, target.delta) || other.delta < target.delta) continue;
        const double slope = (other.fc - target.fc) / (other.delta - target.delta);
        if (slope < best_slope) {
            best_slope = slope;
            t.f_plus = other.fc;
            t.delta_plus = other.delta;
            t.plus_index = i;
        }
    }
    if (best_slope == kInf) {
        throw PreconditionError("interval " + std::to_string(j) + " is among the longest; no longer interval exists");
    }
    if (!potentially_optimal(partition, j).optimal) {
        throw PreconditionError("interval " + std::to_string(j) + " is not potentially optimal");
    }
    const double eps = partition.epsilon;
    t.delta_f = (t.f_plus - target.fc) * target.delta / (t.delta_plus - target.delta) - target.fc +
                (1.0 - eps) * partition.f_min();
    return t;
}

Partition translated(const Partition& partition, double shift) {
    Partition out = partition;
    for (auto& iv : out.intervals) iv.fc += shift;
    return out;
}

namespace {

double checked(const Function1d& objective, double x) {
    const double v = objective(x);
    if (!std::isfinite(v)) {
        throw ObjectiveError("objective returned a non-finite value at x = " + format_double(x));
    }
    return v;
}

}  // namespace

IterationRecord iterate(const Function1d& objective, Partition& partition, int iteration) {
    IterationRecord rec;
    rec.iteration = iteration;
    rec.subdivided = potentially_optimal_set(partition);

    std::vector<Interval> next;
    next.reserve(partition.intervals.size() + 2 * rec.subdivided.size());
    auto chosen = rec.subdivided.begin();
    for (std::size_t i = 0; i < partition.intervals.size(); ++i) {
        const Interval& iv = partition.intervals[i];
        if (chosen == rec.subdivided.end() || *chosen != i) {
            next.push_back(iv);
            continue;
        }
        ++chosen;
        const double width = iv.b - iv.a;
        const double m1 = iv.a + width / 3.0;
        const double m2 = iv.a + 2.0 * width / 3.0;
        const double child_delta = iv.delta / 3.0;
        Interval left{iv.a, m1, 0.5 * (iv.a + m1), child_delta, 0.0};
        Interval mid{m1, m2, iv.c, child_delta, iv.fc};
        Interval right{m2, iv.b, 0.5 * (m2 + iv.b), child_delta, 0.0};
        left.fc = checked(objective, left.c);
        right.fc = checked(objective, right.c);
        next.push_back(left);
        next.push_back(mid);
        next.push_back(right);
    }
    partition.intervals = std::move(next);
    rec.f_min = partition.f_min();
    rec.n_intervals = partition.intervals.size();
    return rec;
}

Run run_direct(const Function1d& objective, double lower, double upper, double epsilon, int budget) {
    if (!(lower < upper)) throw InvalidArgument("DIRECT needs lower < upper");
    if (budget < 1) throw InvalidArgument("DIRECT budget must be at least 1");
    Run run;
    run.partition.epsilon = epsilon;
    const double c = 0.5 * (lower + upper);
    run.partition.intervals.push_back(Interval::make(lower, upper, checked(objective, c)));
    run.partition.validate();
    for (int it = 1; it <= budget; ++it) run.trace.push_back(iterate(objective, run.partition, it));
    return run;
}

Counterexample find_counterexample(const Function1d& objective, double lower, double upper,
                                   double epsilon, int max_iterations) {
    Partition partition;
    partition.epsilon = epsilon;
    partition.intervals.push_back(Interval::make(lower, upper, checked(objective, 0.5 * (lower + upper))));
    partition.validate();
    for (int it = 1; it <= max_iterations; ++it) {
        double longest = 0.0;
        for (const auto& iv : partition.intervals) longest = std::max(longest, iv.delta);
        const bool positive = std::all_of(partition.intervals.begin(), partition.intervals.end(),
                                          [](const Interval& iv) { return iv.fc > 0.0; });
        if (!positive) throw PreconditionError("counterexample search needs a positive objective");
        for (std::size_t j : potentially_optimal_set(partition)) {
            if (same_length(partition.intervals[j].delta, longest)) continue;
            const ShiftThreshold t = counterexample_shift(partition, j);
            if (!(t.delta_f > 0.0)) continue;
            return {it, partition, j, t, 1.01 * t.delta_f / epsilon};
        }
        (void)iterate(objective, partition, it);
    }
    throw PreconditionError("no potentially optimal interval shorter than the longest was found in " +
                            std::to_string(max_iterations) + " iterations");
}

nlohmann::json partition_to_json(const Partition& partition) {
    nlohmann::json ivs = nlohmann::json::array();
    for (const auto& iv : partition.intervals) ivs.push_back({{"a", iv.a}, {"b", iv.b}, {"fc", iv.fc}});
    return {{"epsilon", partition.epsilon}, {"f_min", partition.f_min()}, {"intervals", ivs}};
}

Partition partition_from_json(const nlohmann::json& j) {
    Partition p;
    p.epsilon = j.at("epsilon").get<double>();
    for (const auto& iv : j.at("intervals")) {
        p.intervals.push_back(Interval::make(iv.at("a").get<double>(), iv.at("b").get<double>(),
                                             iv.at("fc").get<double>()));
    }
    p.validate();
    return p;
}

void write_trace_csv(const std::vector<IterationRecord>& trace, std::ostream& out) {
    out << "iter,subdivided_indices,f_min,n_intervals\n";
    for (const auto& r : trace) {
        out << r.iteration << ',';
        for (std::size_t k = 0; k < r.subdivided.size(); ++k) out << (k ? ";" : "") << r.subdivided[k];
        out << ',' << format_double(r.f_min) << ',' << r.n_intervals << '\n';
    }
}

}  // namespace sgo::direct
