#include "sgo/errors.hpp"
#include "sgo/objectives.hpp"
#include "sgo/scaled_run.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgo;

namespace {

const ExtendedNumeral G = ExtendedNumeral::grossone();

std::vector<Point> fig1_points() {
    std::vector<Point> pts;
    for (double x : fig1::kPoints) pts.push_back(make_point({x}));
    return pts;
}

std::vector<double> fig1_values() { return {fig1::kValues.begin(), fig1::kValues.end()}; }

}  // namespace

TEST_CASE("identity scaling reproduces the conventional run") {
    const auto& obj = find_objective("sin3x");
    const auto design = default_initial_design(obj.region);
    for (auto alg : {Algorithm::p_algorithm, Algorithm::one_step_bayes}) {
        const auto base = run(alg, obj.objective(), obj.region, design, 10);
        const auto scaled = scaled_criterion_run(alg, obj.objective(), obj.region, design, 10, 1.0, 0.0);
        REQUIRE(scaled.steps.size() == 10);
        CHECK(scaled.trace.grid_indices() == base.grid_indices());
        CHECK(scaled.initial_values.size() == design.size());
        for (std::size_t i = 0; i < scaled.steps.size(); ++i) {
            const auto& s = scaled.steps[i];
            CHECK(s.iteration == static_cast<int>(i) + 1);
            CHECK(s.certificate.collapsed);
            CHECK(s.criterion == doctest::Approx(base.iterations[i].criterion).epsilon(1e-9));
            CHECK(s.f_value == base.iterations[i].y);
            CHECK(s.z_value.real_part() == s.f_value);
            CHECK(s.mu.is_real());
        }
    }
}

TEST_CASE("infinite and infinitesimal scales") {
    const auto& obj = find_objective("sin3x");
    const auto design = default_initial_design(obj.region);
    const auto base = run(Algorithm::p_algorithm, obj.objective(), obj.region, design, 15);

    struct Case {
        ExtendedNumeral a, b;
    };
    for (const auto& c : {Case{G, G * G}, Case{ExtendedNumeral::term(3.0, -2), -7.0},
                          Case{ExtendedNumeral::term(0.5, 1), ExtendedNumeral::term(2.0, -1) + 4.0}}) {
        CAPTURE(c.a.to_string());
        const auto scaled = scaled_criterion_run(Algorithm::p_algorithm, obj.objective(), obj.region, design, 15,
                                                 c.a, c.b);
        CHECK(scaled.trace.grid_indices() == base.grid_indices());
        for (std::size_t i = 0; i < scaled.steps.size(); ++i) {
            const auto& s = scaled.steps[i];
            CHECK(s.certificate.collapsed);
            CHECK(s.certificate.candidates > 0);
            CHECK(s.certificate.max_residual <= kCollapseTolerance);
            CHECK(s.certificate.max_deviation <= kCollapseTolerance);
            CHECK(s.z_value == c.a * ExtendedNumeral(s.f_value) + c.b);
            CHECK(s.sigma.leading_grade() == c.a.leading_grade());
            CHECK(s.criterion == doctest::Approx(base.iterations[i].criterion).epsilon(1e-9));
        }
        // values that stay non-real are reported as NaN in the plain trace
        CHECK(std::isnan(scaled.trace.iterations.front().y));
    }
}

TEST_CASE("one-step Bayes in extended arithmetic") {
    const auto& obj = find_objective("forrester");
    const auto design = default_initial_design(obj.region);
    const auto base = run(Algorithm::one_step_bayes, obj.objective(), obj.region, design, 8);
    const auto scaled =
        scaled_criterion_run(Algorithm::one_step_bayes, obj.objective(), obj.region, design, 8, G, G * G);
    CHECK(scaled.trace.grid_indices() == base.grid_indices());
    for (const auto& s : scaled.steps) CHECK(s.certificate.collapsed);
}

TEST_CASE("planning from a value table") {
    const Region r(0.0, 1.0);
    for (auto est : {Estimator::mle, Estimator::sample}) {
        OptimizerConfig cfg;
        cfg.estimator = est;
        const auto step = scaled_next_point(Algorithm::p_algorithm, r, fig1_points(), fig1_values(), G, G * G, cfg);
        const auto plain = scaled_next_point(Algorithm::p_algorithm, r, fig1_points(), fig1_values(), 1.0, 0.0, cfg);
        CHECK(step.grid_index == plain.grid_index);
        CHECK(step.certificate.collapsed);
        CHECK(step.criterion == doctest::Approx(plain.criterion).epsilon(1e-9));
        if (est == Estimator::mle) CHECK(step.grid_index == 180);
    }
}

TEST_CASE("unsupported scales") {
    const auto& obj = find_objective("sin3x");
    const auto design = default_initial_design(obj.region);
    for (const auto& a : {G + 1.0, -G, ExtendedNumeral(-2.0), ExtendedNumeral()}) {
        CAPTURE(a.to_string());
        CHECK_THROWS_AS(
            (void)scaled_criterion_run(Algorithm::p_algorithm, obj.objective(), obj.region, design, 2, a, 0.0),
            UnsupportedOperation);
    }
    CHECK_THROWS_AS((void)scaled_criterion_run(Algorithm::p_algorithm, obj.objective(), obj.region, design, -1, G, 0.0),
                    InvalidArgument);
    CHECK_THROWS_AS((void)scaled_criterion_run(Algorithm::p_algorithm, obj.objective(), obj.region, {}, 1, G, 0.0),
                    InvalidArgument);
}
