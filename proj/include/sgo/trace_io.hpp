#pragma once

#include "sgo/optimizer.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

namespace sgo {

/// Shortest decimal that reads back to the same double; empty for NaN/inf.
[[nodiscard]] std::string format_double(double v);
/// Inverse of format_double (empty string reads as NaN).
[[nodiscard]] double parse_double(const std::string& text);

/// One row per evaluation: the initial design first (iter 0, blank model
/// columns), then one row per iteration.
/// Header: iter,grid_index,x...,y,criterion,mu,sigma2,y_on,best
void write_trace_csv(const OptimizationTrace& trace, std::ostream& out);
[[nodiscard]] OptimizationTrace read_trace_csv(std::istream& in);

[[nodiscard]] nlohmann::json trace_to_json(const OptimizationTrace& trace);
[[nodiscard]] OptimizationTrace trace_from_json(const nlohmann::json& j);

}  // namespace sgo
