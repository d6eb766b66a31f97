#pragma once

#include <nlohmann/json.hpp>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace sgo::direct {

/// [a, b] with its midpoint c, half-length delta and the value f(c).
struct Interval {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double delta = 0.0;
    double fc = 0.0;

    static Interval make(double a, double b, double fc);
};

/// Intervals tiling the search interval, kept sorted by left endpoint.
struct Partition {
    std::vector<Interval> intervals;
    /// Requested relative improvement, 0 < epsilon < 1.
    double epsilon = 1e-4;

    [[nodiscard]] double f_min() const;
    [[nodiscard]] std::size_t argmin() const;
    /// Throws InvalidArgument when the invariants do not hold.
    void validate() const;
};

inline constexpr double kDefaultEpsilon = 1e-4;
inline constexpr double kFeasibilitySlack = 1e-12;

/// Half-lengths equal up to rounding.
[[nodiscard]] bool same_length(double delta_a, double delta_b);

struct Optimality {
    bool optimal = false;
    /// Feasible range of the rate constant L when optimal; otherwise the two
    /// bounds that could not be reconciled.
    double lower = 0.0;
    double upper = 0.0;
    std::string reason;
};

/// Whether some L > 0 makes interval j the best lower bound among all
/// intervals while also promising an improvement of epsilon |f_min|.
/// Decided from the lower bound (shorter intervals and the improvement
/// condition) and the upper bound (longer intervals) on L, plus dominance
/// among intervals of equal length.
[[nodiscard]] Optimality potentially_optimal(const Partition& partition, std::size_t j);

[[nodiscard]] std::vector<std::size_t> potentially_optimal_set(const Partition& partition);

struct ShiftThreshold {
    /// Translating all values by more than delta_f / epsilon removes the
    /// potential optimality of interval j.
    double delta_f = 0.0;
    /// Value and half-length of the longer interval binding the upper bound on L.
    double f_plus = 0.0;
    double delta_plus = 0.0;
    std::size_t plus_index = 0;
};

/// Requires interval j to be potentially optimal, strictly shorter than some
/// other interval, and all values positive; throws PreconditionError
/// otherwise.
[[nodiscard]] ShiftThreshold counterexample_shift(const Partition& partition, std::size_t j);

/// Partition with every value translated by `shift`.
[[nodiscard]] Partition translated(const Partition& partition, double shift);

using Function1d = std::function<double(double)>;

struct IterationRecord {
    int iteration = 0;
    /// Indices into the partition as it stood before the iteration.
    std::vector<std::size_t> subdivided;
    double f_min = 0.0;
    std::size_t n_intervals = 0;
};

struct Run {
    Partition partition;
    std::vector<IterationRecord> trace;
};

/// Starts from the whole interval evaluated at its midpoint and, for
/// `budget` iterations, trisects every potentially optimal interval. The
/// middle third keeps its parent's evaluation. Throws ObjectiveError on
/// non-finite values.
[[nodiscard]] Run run_direct(const Function1d& objective, double lower, double upper,
                             double epsilon, int budget);

/// One iteration on an existing partition.
IterationRecord iterate(const Function1d& objective, Partition& partition, int iteration);

/// A DIRECT run on f, an iteration where interval j is potentially optimal
/// but not among the longest, and the translation that breaks it.
struct Counterexample {
    int iteration = 0;
    Partition partition;  // state before that iteration
    std::size_t j = 0;
    ShiftThreshold threshold;
    double shift = 0.0;  // 1.01 * delta_f / epsilon
};

/// Searches the first `max_iterations` iterations of run_direct for an
/// instance satisfying the preconditions of counterexample_shift. The
/// objective must be positive. Throws PreconditionError if none is found.
[[nodiscard]] Counterexample find_counterexample(const Function1d& objective, double lower,
                                                 double upper, double epsilon, int max_iterations);

[[nodiscard]] nlohmann::json partition_to_json(const Partition& partition);
[[nodiscard]] Partition partition_from_json(const nlohmann::json& j);

/// Header: iter,subdivided_indices,f_min,n_intervals (indices joined by ';').
void write_trace_csv(const std::vector<IterationRecord>& trace, std::ostream& out);

}  // namespace sgo::direct
