#pragma once

#include "mgarch/diagnostics.hpp"
#include "mgarch/estimate.hpp"
#include "mgarch/garch.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace mgarch::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

Json to_json(const MomentSummary& m);
Json to_json(const CorrelationMatrix& c);
Json to_json(const TestResult& t);
Json to_json(const CorrelationSummary& s);

/// Estimation report grouped the way the parameter tables read: panel_a
/// holds the conditional-mean entries (keys C11, r11, r21, C22, r22, r12),
/// panel_b the conditional-variance entries. Each entry carries
/// {estimate, robust_t} (ols_t for the mean block in two-step mode).
Json to_json(const EstimationResult& r);

/// Two-column CSV (lag, coefficient) with the confidence band in a
/// comment header line.
void write_acf_csv(const std::filesystem::path& path, const AcfResult& acf);

/// CSV columns: date, h11, h12, h22, rho.
void write_path_csv(const std::filesystem::path& path, const ConditionalPath& cp);

void write_json(const std::filesystem::path& path, const Json& j);

/// "estimate (t-stat)" text block for eyeball comparison with the
/// published tables.
std::string render_estimation_text(const EstimationResult& r, const std::string& pair_label);

/// "statistic (p-value)" lines for a set of named tests.
std::string render_tests_text(const std::string& label,
                              const std::vector<TestResult>& tests);

}  // namespace mgarch::report
