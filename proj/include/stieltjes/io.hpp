#pragma once

#include <string>
#include <vector>

#include "stieltjes/density_graph.hpp"
#include "stieltjes/free_convolution.hpp"
#include "stieltjes/inverse.hpp"
#include "stieltjes/measure.hpp"
#include "stieltjes/transforms.hpp"

namespace stieltjes {

inline constexpr const char* kVersion = "stieltjes 0.1.0";

/// Measure JSON:
///   {"atoms":[{"x":..,"w":..}],
///    "components":[{"interval":[a,b],"alpha":..,"beta":..,
///                   "basis":"chebyshevU"|"generalOP","coeffs":[..],
///                   "Z":..,                              (optional, default 1)
///                   "recurrence":{"rows":[[a,b,c],..],"mu0":..}}]}  (generalOP)
std::string measure_to_json(const Measure& m);
Measure measure_from_json(const std::string& text);

/// PiecewiseMonotoneDensity JSON mirrors the piece fields; infinite limits
/// serialize as the string "inf".
std::string density_to_json(const PiecewiseMonotoneDensity& d);
PiecewiseMonotoneDensity density_from_json(const std::string& text);

std::string root_report_to_json(const RootReport& rep);
std::string bound_report_to_json(const BoundReport& rep);
std::string convolution_to_json(const ConvolutionResult& res);

/// CSV rows (t, re, im) with a version header comment.
std::string curve_to_csv(const CurveSamples& curve);

/// Rows of complex numbers from "re im" / "re,im" lines; '#' comments skipped.
std::vector<Complex> read_points(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Deterministic shortest round-trip double formatting.
std::string format_double(double v);

}  // namespace stieltjes
