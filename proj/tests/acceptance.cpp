// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include "support/checks.hpp"
#include "support/oracles.hpp"

#include "sgo/cli.hpp"
#include "sgo/homogeneity.hpp"
#include "sgo/objectives.hpp"
#include "sgo/scaled_run.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string describe(const checks::Stat& s, double tol) {
    return std::to_string(s.cases) + " cases, worst " + fmt(s.worst) + " (tol " + fmt(tol) + "), " +
           std::to_string(s.failures) + " over";
}

void homogeneity_criterion(const std::string& name, sgo::Algorithm alg) {
    double total = 0.0;
    bool all_ok = true;
    std::string detail;
    for (auto est : {sgo::Estimator::mle, sgo::Estimator::sample}) {
        const auto r = checks::homogeneity_suite(alg, est);
        total += r.seconds;
        all_ok = all_ok && r.ok() && r.seconds < 60.0;
        detail += std::string(est == sgo::Estimator::mle ? "mle" : "sample") + ": " + std::to_string(r.runs) +
                  " run pairs, " + std::to_string(r.steps) + " steps, " + std::to_string(r.ties) + " near ties, " +
                  std::to_string(r.mismatches) + " mismatches, " + std::to_string(r.exact_failures) +
                  " inexact power-of-two steps, " + fmt(r.seconds) + " s; ";
        for (const auto& f : r.failed) detail += "[" + f + "] ";
    }
    report(name, all_ok, detail + "total " + fmt(total) + " s");
}

void fig1_criterion() {
    const auto start = std::chrono::steady_clock::now();
    const auto fig = sgo::reproduce_fig1();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = fig.printed_phi_error <= 5e-3 && fig.max_curve_difference <= 1e-9 &&
                    fig.argmax_f == fig.argmax_phi && fig.x.size() == 1001 && secs < 1.0;
    report("worked-example reproduction", ok,
           "printed phi error " + fmt(fig.printed_phi_error) + " (tol 5e-3), curve difference " +
               fmt(fig.max_curve_difference) + " (tol 1e-9), argmax " + std::to_string(fig.argmax_f) + " vs " +
               std::to_string(fig.argmax_phi) + ", " + fmt(secs) + " s");
}

void direct_criterion() {
    const auto& obj = sgo::find_objective("direct-demo");
    const auto f = [g = obj.f](double x) { return g(sgo::make_point({x})); };
    const double eps = 0.01;
    const auto cx = sgo::direct::find_counterexample(f, 0.0, 1.0, eps, 10);
    const auto shifted = sgo::direct::translated(cx.partition, cx.shift);
    const bool before = sgo::direct::potentially_optimal(cx.partition, cx.j).optimal;
    const bool after = sgo::direct::potentially_optimal(shifted, cx.j).optimal;
    const bool oracle_before = oracle::potentially_optimal(cx.partition, cx.j);
    const bool oracle_after = oracle::potentially_optimal(shifted, cx.j);

    const auto dir = std::filesystem::temp_directory_path() / "sgo_acceptance";
    std::filesystem::create_directories(dir);
    std::ostringstream out, err;
    const int code = sgo::cli::run({"homogeneity", "--algorithm", "direct", "--objective", "direct-demo",
                                    "--epsilon", "0.01", "--counterexample", "--budget", "5", "--out",
                                    (dir / "direct").string()},
                                   out, err);
    const bool reported = out.str().find("first mismatch at step") != std::string::npos;

    const auto agreement = checks::direct_oracle_agreement(10000, 20240611);
    const bool ok = before && !after && oracle_before && !oracle_after && code == 1 && reported &&
                    agreement.ok() && agreement.cases >= 10000;
    report("DIRECT translation counterexample", ok,
           "iteration " + std::to_string(cx.iteration) + ", interval " + std::to_string(cx.j) + ", delta_f " +
               fmt(cx.threshold.delta_f) + ", shift " + fmt(cx.shift) + "; optimal before " +
               (before ? "yes" : "no") + ", after " + (after ? "yes" : "no") + "; homogeneity exit " +
               std::to_string(code) + (reported ? " with mismatch step" : " without mismatch step") +
               "; dense-L oracle: " + std::to_string(agreement.cases) + " decisions on 10000 partitions, " +
               std::to_string(agreement.failures) + " disagreements");
}

void extended_criterion() {
    const auto a = sgo::ExtendedNumeral::grossone();
    const auto b = a * a;
    bool ok = true;
    std::string detail;
    for (const std::string name : {"sin3x", "rastrigin1d"}) {
        const auto& obj = sgo::find_objective(name);
        const auto design = sgo::default_initial_design(obj.region);
        const auto base = sgo::run(sgo::Algorithm::p_algorithm, obj.objective(), obj.region, design, 15);
        const auto scaled =
            sgo::scaled_criterion_run(sgo::Algorithm::p_algorithm, obj.objective(), obj.region, design, 15, a, b);
        double residual = 0.0;
        double deviation = 0.0;
        bool collapsed = true;
        for (const auto& st : scaled.steps) {
            residual = std::max(residual, st.certificate.max_residual);
            deviation = std::max(deviation, st.certificate.max_deviation);
            collapsed = collapsed && st.certificate.collapsed;
        }
        const bool same = base.grid_indices() == scaled.trace.grid_indices() && scaled.steps.size() == 15;
        ok = ok && same && collapsed;
        detail += name + ": sequences " + (same ? "identical" : "DIFFER") + ", max residual " + fmt(residual) +
                  ", max deviation " + fmt(deviation) + "; ";
    }
    report("extended scaling a=G, b=G^2", ok, detail + "tol 1e-9");
}

void core_criterion() {
    const auto interp = checks::interpolation(100, 11);
    const auto moments = checks::moments_vs_oracle(200, 12);
    const auto ei = checks::ei_vs_quadrature(1000, 13);
    const auto cdf = checks::normal_cdf_vs_oracle(16001);
    report("numerical core: interpolation", interp.ok(), describe(interp, 1e-8));
    report("numerical core: moments vs explicit inverse", moments.ok(), describe(moments, 1e-10));
    report("numerical core: improvement vs quadrature", ei.ok(), describe(ei, 1e-8));
    report("numerical core: normal cdf vs 50-digit erf", cdf.ok(), describe(cdf, 1e-12));
}

}  // namespace

int main() {
    homogeneity_criterion("P-algorithm strong homogeneity", sgo::Algorithm::p_algorithm);
    homogeneity_criterion("one-step Bayes strong homogeneity", sgo::Algorithm::one_step_bayes);
    const auto scaling = checks::ei_scaling(10, 7);
    report("one-step Bayes improvement scales by a", scaling.ok(), describe(scaling, 1e-9));
    fig1_criterion();
    direct_criterion();
    extended_criterion();
    core_criterion();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
