#include "sgo/cli.hpp"

#include "sgo/direct1d.hpp"
#include "sgo/errors.hpp"
#include "sgo/homogeneity.hpp"
#include "sgo/objectives.hpp"
#include "sgo/scaled_run.hpp"
#include "sgo/trace_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <ostream>

namespace sgo::cli {

namespace {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flags as given on the command line; unset ones leave the config alone.
struct Overrides {
    std::optional<std::string> config_file;
    std::optional<std::string> algorithm, objective, kernel, estimator, a, b, out;
    std::optional<double> lower, upper, decay, epsilon;
    std::optional<int> budget, resolution;
    bool refine = false;
    bool counterexample = false;
};

void add_run_options(CLI::App& cmd, Overrides& o) {
    cmd.add_option("--config", o.config_file, "JSON file with settings (flags override it)");
    cmd.add_option("--algorithm", o.algorithm, "p | ei | direct");
    cmd.add_option("--objective", o.objective, "built-in objective name");
    cmd.add_option("--lower", o.lower, "lower bound of the search interval");
    cmd.add_option("--upper", o.upper, "upper bound of the search interval");
    cmd.add_option("--kernel", o.kernel, "exp | sqexp");
    cmd.add_option("--decay", o.decay, "kernel decay rate c");
    cmd.add_option("--estimator", o.estimator, "mle | sample");
    cmd.add_option("--epsilon", o.epsilon, "aspiration weight (p/ei) or relative improvement (direct)");
    cmd.add_option("--budget", o.budget, "iterations after the initial design");
    cmd.add_option("--resolution", o.resolution, "candidate grid points");
    cmd.add_option("--a", o.a, "scale factor, e.g. 3.9765 or 2*G^1");
    cmd.add_option("--b", o.b, "shift, e.g. -7.3 or G^2");
    cmd.add_option("--out", o.out, "output path prefix");
    cmd.add_flag("--refine", o.refine, "polish the grid winner with a local search");
    cmd.add_flag("--counterexample", o.counterexample,
                 "direct only: use the constructed translation that breaks potential optimality");
}

RunConfig load_config(const Overrides& o, const std::string& default_out) {
    RunConfig c;
    c.out = default_out;
    if (o.config_file) {
        std::ifstream in(*o.config_file);
        if (!in) throw ConfigError("cannot open config file '" + *o.config_file + "'");
        nlohmann::json j;
        try {
            in >> j;
            auto get = [&](const char* key, auto& field) {
                if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
            };
            get("algorithm", c.algorithm);
            get("objective", c.objective);
            get("kernel", c.kernel);
            get("decay", c.decay);
            get("estimator", c.estimator);
            get("budget", c.budget);
            get("resolution", c.resolution);
            get("out", c.out);
            get("refine", c.refine);
            get("counterexample", c.counterexample);
            if (j.contains("lower") || j.contains("upper")) {
                c.has_bounds = true;
                get("lower", c.lower);
                get("upper", c.upper);
            }
            if (j.contains("epsilon")) {
                c.has_epsilon = true;
                get("epsilon", c.epsilon);
            }
            // scaling constants may be given as numbers or numeral strings
            for (auto [key, field] : {std::pair{"a", &c.a}, std::pair{"b", &c.b}}) {
                if (!j.contains(key)) continue;
                const auto& v = j.at(key);
                *field = v.is_string() ? v.get<std::string>() : format_double(v.get<double>());
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("bad config file '" + *o.config_file + "': " + e.what());
        }
    }
    if (o.algorithm) c.algorithm = *o.algorithm;
    if (o.objective) c.objective = *o.objective;
    if (o.kernel) c.kernel = *o.kernel;
    if (o.decay) c.decay = *o.decay;
    if (o.estimator) c.estimator = *o.estimator;
    if (o.budget) c.budget = *o.budget;
    if (o.resolution) c.resolution = *o.resolution;
    if (o.a) c.a = *o.a;
    if (o.b) c.b = *o.b;
    if (o.out) c.out = *o.out;
    if (o.refine) c.refine = true;
    if (o.counterexample) c.counterexample = true;
    if (o.lower || o.upper) {
        const Region builtin = find_objective(c.objective).region;
        if (!c.has_bounds) {
            c.lower = builtin.lower[0];
            c.upper = builtin.upper[0];
        }
        c.has_bounds = true;
        if (o.lower) c.lower = *o.lower;
        if (o.upper) c.upper = *o.upper;
    }
    if (o.epsilon) {
        c.has_epsilon = true;
        c.epsilon = *o.epsilon;
    }
    return c;
}

/// Everything a command needs, checked up front.
struct Resolved {
    RunConfig raw;
    const BuiltinObjective* objective = nullptr;
    Region region;
    bool is_direct = false;
    Algorithm algorithm = Algorithm::p_algorithm;
    OptimizerConfig optimizer;
    double epsilon = 0.1;
    ExtendedNumeral a;
    ExtendedNumeral b;
};

Resolved resolve(const RunConfig& c) {
    Resolved r;
    r.raw = c;
    if (c.algorithm == "p") {
        r.algorithm = Algorithm::p_algorithm;
    } else if (c.algorithm == "ei") {
        r.algorithm = Algorithm::one_step_bayes;
    } else if (c.algorithm == "direct") {
        r.is_direct = true;
    } else {
        throw ConfigError("--algorithm must be one of p, ei, direct (got '" + c.algorithm + "')");
    }
    try {
        r.objective = &find_objective(c.objective);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    if (c.has_bounds) {
        if (!(c.lower < c.upper)) throw ConfigError("--lower must be smaller than --upper");
        r.region = Region(c.lower, c.upper);
    } else {
        r.region = r.objective->region;
    }
    if (r.objective->tabulated && c.has_bounds) {
        throw ConfigError("objective '" + c.objective + "' is a fixed table; bounds cannot be changed");
    }
    if (c.budget < 0) throw ConfigError("--budget must be non-negative");
    if (r.is_direct && c.budget < 1) throw ConfigError("direct needs --budget >= 1");
    if (c.resolution < 2) throw ConfigError("--resolution must be at least 2");
    if (!(c.decay > 0.0)) throw ConfigError("--decay must be positive");

    r.epsilon = c.has_epsilon ? c.epsilon : (r.is_direct ? direct::kDefaultEpsilon : kDefaultEpsilon);
    if (!(r.epsilon > 0.0) || (r.is_direct && !(r.epsilon < 1.0))) {
        throw ConfigError(r.is_direct ? "--epsilon must lie in (0, 1) for direct" : "--epsilon must be positive");
    }

    KernelFamily family = KernelFamily::exponential;
    if (c.kernel == "sqexp") {
        family = KernelFamily::squared_exponential;
    } else if (c.kernel != "exp") {
        throw ConfigError("--kernel must be exp or sqexp (got '" + c.kernel + "')");
    }
    Estimator estimator = Estimator::mle;
    if (c.estimator == "sample") {
        estimator = Estimator::sample;
    } else if (c.estimator != "mle") {
        throw ConfigError("--estimator must be mle or sample (got '" + c.estimator + "')");
    }
    r.optimizer = OptimizerConfig{CorrelationKernel(family, c.decay), estimator, r.epsilon, {c.resolution}, c.refine};

    try {
        r.a = ExtendedNumeral::parse(c.a);
        r.b = ExtendedNumeral::parse(c.b);
    } catch (const ParseError& e) {
        throw ConfigError(e.what());
    }
    if (r.a.is_zero()) throw ConfigError("--a must be nonzero");
    const bool extended = !r.a.is_real() || !r.b.is_real();
    if (extended && !(r.a.is_monomial() && r.a.leading_coefficient() > 0.0)) {
        throw ConfigError("an extended --a must be a single positive term such as 2*G^1");
    }
    if (extended && r.is_direct) throw ConfigError("direct supports finite --a and --b only");
    if (r.is_direct && r.objective->tabulated) throw ConfigError("direct cannot run on a fixed table");
    return r;
}

bool is_extended(const Resolved& r) { return !r.a.is_real() || !r.b.is_real(); }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    f << content;
}

std::string trace_csv(const OptimizationTrace& trace) {
    std::ostringstream os;
    write_trace_csv(trace, os);
    return os.str();
}

direct::Function1d as_1d(const BuiltinObjective& o) {
    return [f = o.f](double x) { return f(make_point({x})); };
}

Objective scaled_objective(const Resolved& r) {
    Objective f = r.objective->objective();
    if (r.a == ExtendedNumeral(1.0) && r.b.is_zero()) return f;
    const WideReal wa(r.a.real_part());
    const WideReal wb(r.b.real_part());
    return [f, wa, wb](const Point& x) -> WideReal { return wa * f(x) + wb; };
}

int cmd_run(const Resolved& r, std::ostream& out) {
    const std::string& prefix = r.raw.out;
    if (r.is_direct) {
        const auto f = as_1d(*r.objective);
        const double a = r.a.real_part();
        const double b = r.b.real_part();
        const direct::Function1d h = [f, a, b](double x) { return a * f(x) + b; };
        const direct::Run run = direct::run_direct(h, r.region.lower[0], r.region.upper[0], r.epsilon, r.raw.budget);
        std::ostringstream csv;
        direct::write_trace_csv(run.trace, csv);
        write_file(prefix + ".csv", csv.str());
        write_file(prefix + ".json", direct::partition_to_json(run.partition).dump(2) + "\n");
        const auto& best = run.partition.intervals[run.partition.argmin()];
        out << "direct: " << run.trace.size() << " iterations, " << run.partition.intervals.size()
            << " intervals, f_min = " << format_double(best.fc) << " at x = " << format_double(best.c) << '\n';
        return kOk;
    }

    const std::vector<Point> design = r.objective->tabulated
                                          ? std::vector<Point>{}
                                          : default_initial_design(r.region);
    if (r.objective->tabulated) {
        // fixed design: plan the next point from the table only
        std::vector<Point> pts;
        for (double x : fig1::kPoints) pts.push_back(make_point({x}));
        SequentialOptimizer opt(r.algorithm, scaled_objective(r), r.region, pts, r.optimizer);
        const Proposal p = opt.propose();
        nlohmann::json j = trace_to_json(opt.trace());
        j["next"] = {{"grid_index", p.selection.grid_index},
                     {"x", p.selection.point[0]},
                     {"criterion", p.selection.value},
                     {"mu", p.parameters.mu},
                     {"sigma2", p.parameters.sigma2},
                     {"y_on", p.level.y_on}};
        write_file(prefix + ".csv", trace_csv(opt.trace()));
        write_file(prefix + ".json", j.dump(2) + "\n");
        out << to_string(r.algorithm) << " (fixed design): next point x = " << format_double(p.selection.point[0])
            << " (grid index " << p.selection.grid_index << ", criterion " << format_double(p.selection.value)
            << ")\n";
        return kOk;
    }

    OptimizationTrace trace;
    nlohmann::json j;
    if (is_extended(r)) {
        const ScaledRunResult res = scaled_criterion_run(r.algorithm, r.objective->objective(), r.region, design,
                                                         r.raw.budget, r.a, r.b, r.optimizer);
        trace = res.trace;
        j = trace_to_json(trace);
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& s : res.steps) {
            steps.push_back({{"iter", s.iteration},
                             {"grid_index", s.grid_index},
                             {"z", s.z_value.to_string()},
                             {"mu", s.mu.to_string()},
                             {"sigma", s.sigma.to_string()},
                             {"z_on", s.z_on.to_string()},
                             {"collapsed", s.certificate.collapsed},
                             {"max_residual", s.certificate.max_residual},
                             {"max_deviation", s.certificate.max_deviation}});
        }
        j["extended"] = {{"a", r.a.to_string()}, {"b", r.b.to_string()}, {"steps", steps}};
    } else {
        trace = run(r.algorithm, scaled_objective(r), r.region, design, r.raw.budget, r.optimizer);
        j = trace_to_json(trace);
    }
    write_file(prefix + ".csv", trace_csv(trace));
    write_file(prefix + ".json", j.dump(2) + "\n");

    // best point over the whole trace, located by its grid row
    std::size_t best_row = 0;
    const auto best = trace.best_so_far();
    const std::size_t n0 = trace.initial_points.size();
    for (std::size_t i = 1; i < best.size(); ++i) {
        if (best[i] < best[best_row]) best_row = i;
    }
    const Point& best_x = best_row < n0 ? trace.initial_points[best_row] : trace.iterations[best_row - n0].point;
    out << to_string(r.algorithm) << ": " << trace.iterations.size() << " iterations after " << n0
        << " initial points; best value " << format_double(best.empty() ? 0.0 : best[best_row]) << " at "
        << format_point(best_x) << '\n';
    return kOk;
}

void print_report(const HomogeneityReport& report, std::ostream& out) {
    for (const auto& s : report.steps) {
        out << "step " << s.step << ": ";
        auto show = [&](const std::vector<std::size_t>& v) {
            out << '{';
            for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
            out << '}';
        };
        show(s.selected_f);
        out << " vs ";
        show(s.selected_h);
        out << (s.match ? " match" : " MISMATCH") << (s.near_tie ? " (near tie)" : "") << '\n';
    }
}

int cmd_homogeneity(const Resolved& r, std::ostream& out) {
    HomogeneityReport report;
    if (r.is_direct) {
        const auto f = as_1d(*r.objective);
        const double lo = r.region.lower[0];
        const double hi = r.region.upper[0];
        double a = r.a.real_part();
        double b = r.b.real_part();
        int budget = r.raw.budget;
        if (r.raw.counterexample) {
            const direct::Counterexample cx = direct::find_counterexample(f, lo, hi, r.epsilon, budget);
            a = 1.0;
            b = cx.shift;
            budget = std::max(budget, cx.iteration);
            out << "counterexample: iteration " << cx.iteration << ", interval " << cx.j << ", delta_f "
                << format_double(cx.threshold.delta_f) << ", shift " << format_double(cx.shift) << '\n';
        }
        report = compare_direct(f, lo, hi, r.epsilon, budget, a, b);
    } else if (r.objective->tabulated) {
        std::vector<Point> pts;
        for (double x : fig1::kPoints) pts.push_back(make_point({x}));
        report = compare_table(r.algorithm, r.region, pts, {fig1::kValues.begin(), fig1::kValues.end()}, r.a, r.b,
                               r.optimizer);
    } else if (is_extended(r)) {
        report = compare_extended(r.algorithm, r.objective->objective(), r.region,
                                  default_initial_design(r.region), r.raw.budget, r.a, r.b, r.optimizer);
    } else {
        report = compare_runs(r.algorithm, r.objective->objective(), r.region, default_initial_design(r.region),
                              r.raw.budget, r.a.real_part(), r.b.real_part(), r.optimizer);
    }
    std::ostringstream csv;
    write_report_csv(report, csv);
    write_file(r.raw.out + ".csv", csv.str());
    print_report(report, out);
    if (report.passed()) {
        out << "strongly homogeneous on this run: " << report.steps.size() << " steps, " << report.ties()
            << " near ties\n";
        return kOk;
    }
    out << "NOT homogeneous: first mismatch at step " << report.first_mismatch() << " (" << report.mismatches()
        << " mismatching steps)\n";
    return kMismatch;
}

int cmd_example_fig1(const std::string& estimator_name, double epsilon, int resolution, const std::string& prefix,
                     std::ostream& out) {
    Estimator estimator = Estimator::mle;
    if (estimator_name == "sample") {
        estimator = Estimator::sample;
    } else if (estimator_name != "mle") {
        throw ConfigError("--estimator must be mle or sample");
    }
    if (!(epsilon > 0.0)) throw ConfigError("--epsilon must be positive");
    if (resolution < 2) throw ConfigError("--resolution must be at least 2");
    const Fig1Reproduction fig = reproduce_fig1(estimator, epsilon, resolution);

    std::ostringstream csv;
    csv << "x,m_f,s_f,crit_f,m_phi,s_phi,crit_phi\n";
    for (std::size_t i = 0; i < fig.x.size(); ++i) {
        csv << format_double(fig.x[i]) << ',' << format_double(fig.m_f[i]) << ',' << format_double(fig.s_f[i])
            << ',' << format_double(fig.crit_f[i]) << ',' << format_double(fig.m_phi[i]) << ','
            << format_double(fig.s_phi[i]) << ',' << format_double(fig.crit_phi[i]) << '\n';
    }
    write_file(prefix + ".csv", csv.str());

    const bool phi_ok = fig.printed_phi_error <= 5e-3;
    const bool curves_ok = fig.max_curve_difference <= 1e-9;
    const bool argmax_ok = fig.argmax_f == fig.argmax_phi;
    const bool level_ok = fig.aspiration_error <= 1e-12;
    auto verdict = [](bool ok) { return ok ? "ok" : "FAILED"; };
    out << "printed phi vs a*f+b: max error " << format_double(fig.printed_phi_error) << " (<= 5e-3) "
        << verdict(phi_ok) << '\n'
        << "criterion curves: max relative difference " << format_double(fig.max_curve_difference)
        << " (<= 1e-9) " << verdict(curves_ok) << '\n'
        << "aspiration levels: y_on = " << format_double(fig.y_on) << ", z_on = " << format_double(fig.z_on)
        << ", relative error " << format_double(fig.aspiration_error) << " " << verdict(level_ok) << '\n'
        << "argmax: f at x = " << format_double(fig.x[fig.argmax_f]) << " (index " << fig.argmax_f
        << "), phi at x = " << format_double(fig.x[fig.argmax_phi]) << " (index " << fig.argmax_phi << ") "
        << verdict(argmax_ok) << '\n';
    return phi_ok && curves_ok && argmax_ok && level_ok ? kOk : kMismatch;
}

int cmd_direct_demo(const std::string& objective_name, double epsilon, int max_iterations,
                    const std::string& prefix, std::ostream& out) {
    const BuiltinObjective* obj = nullptr;
    try {
        obj = &find_objective(objective_name);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    if (obj->tabulated) throw ConfigError("direct-demo needs a continuous objective");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("--epsilon must lie in (0, 1)");
    if (max_iterations < 1) throw ConfigError("--budget must be at least 1");

    const auto f = as_1d(*obj);
    const double lo = obj->region.lower[0];
    const double hi = obj->region.upper[0];
    const direct::Counterexample cx = direct::find_counterexample(f, lo, hi, epsilon, max_iterations);
    const auto& target = cx.partition.intervals[cx.j];
    const direct::Optimality before = direct::potentially_optimal(cx.partition, cx.j);
    const direct::Optimality after = direct::potentially_optimal(direct::translated(cx.partition, cx.shift), cx.j);

    out << "iteration " << cx.iteration << ": interval " << cx.j << " [" << format_double(target.a) << ", "
        << format_double(target.b) << "], f(c) = " << format_double(target.fc) << ", f_min = "
        << format_double(cx.partition.f_min()) << '\n'
        << "binding longer interval: f+ = " << format_double(cx.threshold.f_plus)
        << ", delta+ = " << format_double(cx.threshold.delta_plus) << '\n'
        << "delta_f = " << format_double(cx.threshold.delta_f) << ", shift = 1.01 * delta_f / epsilon = "
        << format_double(cx.shift) << '\n'
        << "potentially optimal for f: " << (before.optimal ? "yes" : "no") << ", L in ["
        << format_double(before.lower) << ", " << format_double(before.upper) << "]\n"
        << "potentially optimal for f + shift: " << (after.optimal ? "yes" : "no") << " (" << after.reason << ")\n";

    const int budget = cx.iteration + 2;
    const direct::Run rf = direct::run_direct(f, lo, hi, epsilon, budget);
    const direct::Function1d shifted = [f, s = cx.shift](double x) { return f(x) + s; };
    const direct::Run rh = direct::run_direct(shifted, lo, hi, epsilon, budget);
    const HomogeneityReport report = compare_direct(f, lo, hi, epsilon, budget, 1.0, cx.shift);
    print_report(report, out);

    std::ostringstream csv_f, csv_h;
    direct::write_trace_csv(rf.trace, csv_f);
    direct::write_trace_csv(rh.trace, csv_h);
    write_file(prefix + "_f.csv", csv_f.str());
    write_file(prefix + "_shifted.csv", csv_h.str());
    write_file(prefix + "_partition.json", direct::partition_to_json(cx.partition).dump(2) + "\n");

    const bool shown = before.optimal && !after.optimal && !report.passed();
    out << (shown ? "DIRECT is not strongly homogeneous on this instance\n" : "demonstration FAILED\n");
    return shown ? kOk : kMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Statistical-model global optimization and strong-homogeneity checks", "sgo"};
    app.require_subcommand(1);

    Overrides run_opts;
    auto* run_cmd = app.add_subcommand("run", "run one optimization and write its trace");
    add_run_options(*run_cmd, run_opts);

    Overrides hom_opts;
    auto* hom_cmd = app.add_subcommand("homogeneity", "compare runs on f and a*f+b step by step");
    add_run_options(*hom_cmd, hom_opts);

    std::string fig_estimator = "mle";
    double fig_epsilon = kDefaultEpsilon;
    int fig_resolution = 1001;
    std::string fig_out = "fig1";
    auto* fig_cmd = app.add_subcommand("example-fig1", "reproduce the five-point planning example");
    fig_cmd->add_option("--estimator", fig_estimator, "mle | sample");
    fig_cmd->add_option("--epsilon", fig_epsilon, "aspiration weight");
    fig_cmd->add_option("--resolution", fig_resolution, "grid points on [0, 1]");
    fig_cmd->add_option("--out", fig_out, "output path prefix");

    std::string demo_objective = "direct-demo";
    double demo_epsilon = 0.01;
    int demo_budget = 10;
    std::string demo_out = "direct_demo";
    auto* demo_cmd = app.add_subcommand("direct-demo", "construct a translation that changes DIRECT's choices");
    demo_cmd->add_option("--objective", demo_objective, "positive built-in objective");
    demo_cmd->add_option("--epsilon", demo_epsilon, "relative improvement in (0, 1)");
    demo_cmd->add_option("--budget", demo_budget, "iterations to search for an instance");
    demo_cmd->add_option("--out", demo_out, "output path prefix");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run_cmd) return cmd_run(resolve(load_config(run_opts, "sgo_run")), out);
        if (*hom_cmd) return cmd_homogeneity(resolve(load_config(hom_opts, "sgo_homogeneity")), out);
        if (*fig_cmd) return cmd_example_fig1(fig_estimator, fig_epsilon, fig_resolution, fig_out, out);
        if (*demo_cmd) return cmd_direct_demo(demo_objective, demo_epsilon, demo_budget, demo_out, out);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalError;
    }
    return kConfigError;
}

}  // namespace sgo::cli
