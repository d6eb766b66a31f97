#include "sgo/trace_io.hpp"

#include "sgo/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace sgo {

std::string format_double(double v) {
    if (!std::isfinite(v)) return {};
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

double parse_double(const std::string& text) {
    if (text.empty()) return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ParseError("not a number: '" + text + "'");
    }
    return v;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::string coordinate_header(Eigen::Index d) {
    if (d == 1) return "x";
    std::string h;
    for (Eigen::Index k = 0; k < d; ++k) h += (k ? ",x" : "x") + std::to_string(k + 1);
    return h;
}

Eigen::Index trace_dimension(const OptimizationTrace& trace) {
    if (!trace.initial_points.empty()) return trace.initial_points.front().size();
    if (!trace.iterations.empty()) return trace.iterations.front().point.size();
    return 1;
}

void write_point(std::ostream& out, const Point& x) {
    for (Eigen::Index k = 0; k < x.size(); ++k) out << ',' << format_double(x[k]);
}

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double number_or_nan(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

void write_trace_csv(const OptimizationTrace& trace, std::ostream& out) {
    const auto d = trace_dimension(trace);
    out << "iter,grid_index," << coordinate_header(d) << ",y,criterion,mu,sigma2,y_on,best\n";
    const auto best = trace.best_so_far();
    for (std::size_t i = 0; i < trace.initial_points.size(); ++i) {
        out << "0,";
        write_point(out, trace.initial_points[i]);
        out << ',' << format_double(trace.initial_values[i]) << ",,,,," << format_double(best[i]) << '\n';
    }
    for (const auto& r : trace.iterations) {
        out << r.iteration << ',' << r.grid_index;
        write_point(out, r.point);
        out << ',' << format_double(r.y) << ',' << format_double(r.criterion) << ','
            << format_double(r.mu) << ',' << format_double(r.sigma2) << ',' << format_double(r.y_on)
            << ',' << format_double(r.best) << '\n';
    }
}

OptimizationTrace read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty trace file");
    const auto header = split(line, ',');
    if (header.size() < 9 || header[0] != "iter" || header[1] != "grid_index") {
        throw ParseError("unexpected trace header: " + line);
    }
    const auto d = static_cast<Eigen::Index>(header.size() - 8);
    OptimizationTrace trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != header.size()) throw ParseError("wrong field count in trace row: " + line);
        Point x(d);
        for (Eigen::Index k = 0; k < d; ++k) x[k] = parse_double(f[static_cast<std::size_t>(2 + k)]);
        const auto col = [&](std::size_t offset) { return parse_double(f[static_cast<std::size_t>(d) + 2 + offset]); };
        const int iter = std::stoi(f[0]);
        if (iter == 0) {
            trace.initial_points.push_back(std::move(x));
            trace.initial_values.push_back(col(0));
            continue;
        }
        IterationRecord r;
        r.iteration = iter;
        r.grid_index = static_cast<std::size_t>(std::stoull(f[1]));
        r.point = std::move(x);
        r.y = col(0);
        r.criterion = col(1);
        r.mu = col(2);
        r.sigma2 = col(3);
        r.y_on = col(4);
        r.best = col(5);
        r.fallback = std::isnan(r.criterion);
        trace.iterations.push_back(std::move(r));
    }
    return trace;
}

nlohmann::json trace_to_json(const OptimizationTrace& trace) {
    nlohmann::json rows = nlohmann::json::array();
    const auto best = trace.best_so_far();
    auto coords = [](const Point& x) { return std::vector<double>(x.data(), x.data() + x.size()); };
    for (std::size_t i = 0; i < trace.initial_points.size(); ++i) {
        rows.push_back({{"iter", 0},
                        {"grid_index", nullptr},
                        {"x", coords(trace.initial_points[i])},
                        {"y", trace.initial_values[i]},
                        {"criterion", nullptr},
                        {"mu", nullptr},
                        {"sigma2", nullptr},
                        {"y_on", nullptr},
                        {"best", best[i]}});
    }
    for (const auto& r : trace.iterations) {
        rows.push_back({{"iter", r.iteration},
                        {"grid_index", r.grid_index},
                        {"x", coords(r.point)},
                        {"y", number_or_null(r.y)},
                        {"criterion", number_or_null(r.criterion)},
                        {"mu", number_or_null(r.mu)},
                        {"sigma2", number_or_null(r.sigma2)},
                        {"y_on", number_or_null(r.y_on)},
                        {"best", number_or_null(r.best)}});
    }
    return {{"algorithm", to_string(trace.algorithm)}, {"rows", rows}};
}

OptimizationTrace trace_from_json(const nlohmann::json& j) {
    OptimizationTrace trace;
    const std::string algo = j.at("algorithm").get<std::string>();
    if (algo == "p-algorithm") {
        trace.algorithm = Algorithm::p_algorithm;
    } else if (algo == "one-step-bayes") {
        trace.algorithm = Algorithm::one_step_bayes;
    } else {
        throw ParseError("unknown algorithm in trace: " + algo);
    }
    for (const auto& row : j.at("rows")) {
        const auto xs = row.at("x").get<std::vector<double>>();
        Point x = Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
        const int iter = row.at("iter").get<int>();
        if (iter == 0) {
            trace.initial_points.push_back(std::move(x));
            trace.initial_values.push_back(row.at("y").get<double>());
            continue;
        }
        IterationRecord r;
        r.iteration = iter;
        r.grid_index = row.at("grid_index").get<std::size_t>();
        r.point = std::move(x);
        r.y = number_or_nan(row.at("y"));
        r.criterion = number_or_nan(row.at("criterion"));
        r.mu = number_or_nan(row.at("mu"));
        r.sigma2 = number_or_nan(row.at("sigma2"));
        r.y_on = number_or_nan(row.at("y_on"));
        r.best = number_or_nan(row.at("best"));
        r.fallback = std::isnan(r.criterion);
        trace.iterations.push_back(std::move(r));
    }
    return trace;
}

}  // namespace sgo
