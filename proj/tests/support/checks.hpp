#pragma once

// Randomized property checks shared by the unit tests and the acceptance
// runner. Every check is seeded, so reruns see the same cases.

#include "sgo/direct1d.hpp"
#include "sgo/gp_model.hpp"
#include "sgo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace checks {

using Rng = std::mt19937_64;

/// |value - reference| <= tolerance * max(|reference|, floor): purely
/// relative unless a floor is given.
[[nodiscard]] inline bool rel_close(double value, double reference, double tolerance, double floor = 0.0) {
    return value == reference ||
           std::abs(value - reference) <= tolerance * std::max(std::abs(reference), floor);
}

/// n points in [0, 1]^d, pairwise at least `min_separation` apart (max-norm).
[[nodiscard]] std::vector<sgo::Point> random_points(Rng& rng, int n, int d, double min_separation);
[[nodiscard]] std::vector<double> random_values(Rng& rng, int n, double lo = -2.0, double hi = 2.0);

/// n intervals with half-lengths 0.5 * 3^-k, k in 0..3, and values in
/// [0.5, 2] (positive) or [-1, 1].
[[nodiscard]] sgo::direct::Partition random_partition(Rng& rng, int n, bool positive, double epsilon);

/// Outcome of one randomized property: the worst observed error, how many
/// cases were tried and how many broke the tolerance.
struct Stat {
    double worst = 0.0;
    std::size_t cases = 0;
    std::size_t failures = 0;

    [[nodiscard]] bool ok() const { return failures == 0 && cases > 0; }
    void record(double error, double tolerance);
};

/// |m_n(x_i) - y_i| / (1 + |y_i|) and s_n^2(x_i) / sigma2 at every history
/// point of `histories` random histories with n <= 10 and d <= 2.
[[nodiscard]] Stat interpolation(int histories, std::uint64_t seed);
/// mu, sigma2 and the conditional moments at random points against the
/// explicit-inverse oracle, n <= 6, both estimators.
[[nodiscard]] Stat moments_vs_oracle(int histories, std::uint64_t seed);
/// Closed-form improvement against quadrature on random (m, s, y_on).
[[nodiscard]] Stat ei_vs_quadrature(int triples, std::uint64_t seed);
/// normal_cdf against the 50-digit reference on a regular grid over [-8, 8].
[[nodiscard]] Stat normal_cdf_vs_oracle(int points);
/// Improvement under a * y + b equals a times the improvement under y on the
/// 1001-point grid, for random one-dimensional histories.
[[nodiscard]] Stat ei_scaling(int histories, std::uint64_t seed);
/// Closed-form potential optimality against the dense-L scan, every
/// interval of every random partition. `cases` counts decisions.
[[nodiscard]] Stat direct_oracle_agreement(int partitions, std::uint64_t seed);
/// For random instances meeting the preconditions, j is potentially optimal
/// before and not after a shift of 1.01 * delta_f / epsilon (dense-L oracle).
[[nodiscard]] Stat counterexample_contract(int trials, std::uint64_t seed);

struct SuiteResult {
    std::size_t runs = 0;
    std::size_t steps = 0;
    std::size_t ties = 0;
    std::size_t mismatches = 0;
    /// Steps with a = 2^k, b = 0 where the indices differed at all.
    std::size_t exact_failures = 0;
    double seconds = 0.0;
    std::vector<std::string> failed;

    [[nodiscard]] bool ok() const { return mismatches == 0 && exact_failures == 0 && runs > 0; }
};

inline const std::vector<double> kScales{3.9765, 1024.0, 1e6, 1e-8};
inline const std::vector<double> kShifts{0.0, -7.3, 1e9};
inline const std::vector<int> kBudgets{5, 15, 25};

/// Base against scaled runs for every runnable objective, scale, shift and
/// budget above.
[[nodiscard]] SuiteResult homogeneity_suite(sgo::Algorithm algorithm, sgo::Estimator estimator);

}  // namespace checks
