#include "sgo/homogeneity.hpp"

#include "sgo/errors.hpp"
#include "sgo/objectives.hpp"
#include "sgo/scaled_run.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace sgo {

bool HomogeneityReport::passed() const { return first_mismatch() < 0; }

std::size_t HomogeneityReport::mismatches() const {
    return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const StepComparison& s) {
        return !s.match && !s.near_tie;
    }));
}

std::size_t HomogeneityReport::ties() const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [](const StepComparison& s) { return s.near_tie; }));
}

int HomogeneityReport::first_mismatch() const {
    for (const auto& s : steps) {
        if (!s.match && !s.near_tie) return s.step;
    }
    return -1;
}

void write_report_csv(const HomogeneityReport& report, std::ostream& out) {
    auto join = [](const std::vector<std::size_t>& v) {
        std::string s;
        for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + std::to_string(v[k]);
        return s;
    };
    out << "step,index_f,index_h,match,near_tie\n";
    for (const auto& s : report.steps) {
        out << s.step << ',' << join(s.selected_f) << ',' << join(s.selected_h) << ',' << (s.match ? 1 : 0)
            << ',' << (s.near_tie ? 1 : 0) << '\n';
    }
}

namespace {

bool in_ties(const Selection& sel, std::size_t index) {
    return std::any_of(sel.near_ties.begin(), sel.near_ties.end(),
                       [&](const auto& t) { return t.first == index; });
}

}  // namespace

HomogeneityReport compare_runs(Algorithm algorithm, const Objective& f, const Region& region,
                               const std::vector<Point>& initial_design, int budget, double a, double b,
                               const OptimizerConfig& config) {
    if (!(a != 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidArgument("scaling needs a finite nonzero factor and a finite shift");
    }
    const WideReal wa(a);
    const WideReal wb(b);
    Objective h = [f, wa, wb](const Point& x) -> WideReal { return wa * f(x) + wb; };

    SequentialOptimizer base(algorithm, f, region, initial_design, config);
    SequentialOptimizer scaled(algorithm, h, region, initial_design, config);

    HomogeneityReport report;
    for (int it = 1; it <= budget; ++it) {
        const Proposal pf = base.propose();
        Proposal ph = scaled.propose();
        StepComparison cmp;
        cmp.step = it;
        cmp.selected_f = {pf.selection.grid_index};
        cmp.selected_h = {ph.selection.grid_index};
        cmp.match = pf.selection.grid_index == ph.selection.grid_index;
        const bool tied = pf.selection.is_near_tie() || ph.selection.is_near_tie();
        if (cmp.match) {
            cmp.near_tie = tied;
        } else if (in_ties(pf.selection, ph.selection.grid_index) && in_ties(ph.selection, pf.selection.grid_index)) {
            cmp.near_tie = true;
            ph = scaled.reselect(ph, pf.selection.grid_index);
        }
        report.steps.push_back(std::move(cmp));
        base.commit(pf);
        scaled.commit(ph);
    }
    return report;
}

HomogeneityReport compare_extended(Algorithm algorithm, const Objective& f, const Region& region,
                                   const std::vector<Point>& initial_design, int budget,
                                   const ExtendedNumeral& a, const ExtendedNumeral& b,
                                   const OptimizerConfig& config) {
    SequentialOptimizer base(algorithm, f, region, initial_design, config);
    std::vector<Proposal> proposals;
    for (int it = 0; it < budget; ++it) {
        proposals.push_back(base.propose());
        base.commit(proposals.back());
    }
    const ScaledRunResult scaled = scaled_criterion_run(algorithm, f, region, initial_design, budget, a, b, config);

    HomogeneityReport report;
    for (int it = 0; it < budget; ++it) {
        const auto& pf = proposals[static_cast<std::size_t>(it)].selection;
        const auto& sh = scaled.steps[static_cast<std::size_t>(it)];
        StepComparison cmp;
        cmp.step = it + 1;
        cmp.selected_f = {pf.grid_index};
        cmp.selected_h = {sh.grid_index};
        cmp.match = pf.grid_index == sh.grid_index;
        cmp.near_tie = pf.is_near_tie();
        report.steps.push_back(std::move(cmp));
    }
    return report;
}

HomogeneityReport compare_table(Algorithm algorithm, const Region& region, const std::vector<Point>& points,
                                const std::vector<double>& values, const ExtendedNumeral& a,
                                const ExtendedNumeral& b, const OptimizerConfig& config) {
    const CandidateGrid grid(region, config.resolution.empty() ? CandidateGrid::default_resolution(region.dim())
                                                               : config.resolution);
    const CriterionKind kind = criterion_for(algorithm);
    const SurrogatePosterior base(EvaluationHistory(region, points, values), config.kernel, config.estimator);
    const Selection pf = argmax_criterion(kind, base, aspiration(base.history(), base.parameters(), config.epsilon),
                                          grid, config.refine);
    StepComparison cmp;
    cmp.step = 1;
    cmp.selected_f = {pf.grid_index};
    cmp.near_tie = pf.is_near_tie();
    if (a.is_real() && b.is_real()) {
        if (a.is_zero()) throw InvalidArgument("scaling needs a nonzero factor");
        std::vector<WideReal> scaled;
        for (double v : values) scaled.push_back(WideReal(a.real_part()) * WideReal(v) + WideReal(b.real_part()));
        const SurrogatePosterior post(EvaluationHistory(region, points, scaled), config.kernel, config.estimator);
        const Selection ph = argmax_criterion(
            kind, post, aspiration(post.history(), post.parameters(), config.epsilon), grid, config.refine);
        cmp.selected_h = {ph.grid_index};
        cmp.match = pf.grid_index == ph.grid_index;
        if (!cmp.match) cmp.near_tie = in_ties(pf, ph.grid_index) && in_ties(ph, pf.grid_index);
    } else {
        const ScaledStep sh = scaled_next_point(algorithm, region, points, values, a, b, config);
        cmp.selected_h = {sh.grid_index};
        cmp.match = pf.grid_index == sh.grid_index;
    }
    HomogeneityReport report;
    report.steps.push_back(std::move(cmp));
    return report;
}

HomogeneityReport compare_direct(const direct::Function1d& f, double lower, double upper, double epsilon,
                                 int budget, double a, double b) {
    const direct::Function1d h = [f, a, b](double x) { return a * f(x) + b; };
    const direct::Run rf = direct::run_direct(f, lower, upper, epsilon, budget);
    const direct::Run rh = direct::run_direct(h, lower, upper, epsilon, budget);
    HomogeneityReport report;
    for (std::size_t i = 0; i < rf.trace.size(); ++i) {
        StepComparison cmp;
        cmp.step = rf.trace[i].iteration;
        cmp.selected_f = rf.trace[i].subdivided;
        cmp.selected_h = rh.trace[i].subdivided;
        cmp.match = cmp.selected_f == cmp.selected_h;
        report.steps.push_back(std::move(cmp));
    }
    return report;
}

Fig1Reproduction reproduce_fig1(Estimator estimator, double epsilon, int resolution) {
    const Region region(0.0, 1.0);
    std::vector<Point> points;
    std::vector<WideReal> f_values;
    std::vector<WideReal> phi_values;
    Fig1Reproduction out;
    for (std::size_t i = 0; i < fig1::kPoints.size(); ++i) {
        points.push_back(make_point({fig1::kPoints[i]}));
        f_values.emplace_back(fig1::kValues[i]);
        phi_values.push_back(WideReal(fig1::kA) * WideReal(fig1::kValues[i]) + WideReal(fig1::kB));
        const double exact_phi = fig1::kA * fig1::kValues[i] + fig1::kB;
        out.printed_phi_error = std::max(out.printed_phi_error, std::abs(fig1::kPrintedPhi[i] - exact_phi));
    }
    const SurrogatePosterior post_f(EvaluationHistory(region, points, f_values), default_kernel(), estimator);
    const SurrogatePosterior post_phi(EvaluationHistory(region, points, phi_values), default_kernel(), estimator);
    const AspirationLevel level_f = aspiration(post_f.history(), post_f.parameters(), epsilon);
    const AspirationLevel level_phi = aspiration(post_phi.history(), post_phi.parameters(), epsilon);
    out.y_on = level_f.y_on;
    out.z_on = level_phi.y_on;
    out.aspiration_error = std::abs(out.z_on - (fig1::kA * out.y_on + fig1::kB)) / std::abs(out.z_on);

    const CandidateGrid grid(region, {resolution});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point& x = grid[i];
        const ConditionalMoments mf = post_f.moments(x);
        const ConditionalMoments mp = post_phi.moments(x);
        const CriterionValue cf = p_criterion(post_f, level_f, x);
        const CriterionValue cp = p_criterion(post_phi, level_phi, x);
        out.x.push_back(x[0]);
        out.m_f.push_back(mf.mean);
        out.s_f.push_back(std::sqrt(mf.variance));
        out.crit_f.push_back(cf.value);
        out.m_phi.push_back(mp.mean);
        out.s_phi.push_back(std::sqrt(mp.variance));
        out.crit_phi.push_back(cp.value);
        out.degenerate.push_back(cf.degenerate || cp.degenerate);
        if (cf.degenerate != cp.degenerate) {
            out.max_curve_difference = std::numeric_limits<double>::infinity();
        } else if (!cf.degenerate) {
            const double scale = std::max(std::abs(cf.value), std::abs(cp.value));
            const double diff = std::abs(cf.value - cp.value);
            out.max_curve_difference = std::max(out.max_curve_difference, scale > 0 ? diff / scale : diff);
        }
    }
    const auto kind = CriterionKind::probability_of_improvement;
    out.argmax_f = argmax_criterion(kind, post_f, level_f, grid).grid_index;
    out.argmax_phi = argmax_criterion(kind, post_phi, level_phi, grid).grid_index;
    return out;
}

}  // namespace sgo
