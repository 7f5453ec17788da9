#pragma once

#include "mgarch/csv.hpp"
#include "mgarch/estimate.hpp"
#include "mgarch/report.hpp"
#include "mgarch/simulate.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace mgarch::cli {

/// Bad flags/config keys -> exit 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Unreadable/invalid data -> exit 2. Convergence failures map to exit 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv, Text };

struct RunConfig {
    std::filesystem::path input;
    std::vector<std::string> columns;  // empty = all value columns
    std::vector<std::pair<std::string, std::string>> pairs;

    IngestConfig ingest;
    ReturnMethod method = ReturnMethod::Log;
    Unit scale = Unit::Percent;
    AlignPolicy align_policy = AlignPolicy::Intersect;

    bool ma_filter = false;
    Distribution distribution = Distribution::Gaussian;
    MeanMode mean_mode = MeanMode::Joint;
    OptimizerSettings optimizer;

    int portmanteau_lags = 24;  // Ljung-Box and ARCH LM
    int acf_lags = 30;
    int adf_lags = 4;
    AdfSpec adf_spec = AdfSpec::Constant;
    bool lilliefors = false;

    std::filesystem::path output_dir;  // default: $MGARCH_OUTPUT_DIR or "."
    std::set<Format> formats = {Format::Json, Format::Csv, Format::Text};
    int workers = 1;

    std::filesystem::path model_file;  // post-fit block input for diagnose

    void validate() const;
};

/// Plain `key = value` file, `#` comments. Unknown keys are usage errors.
std::map<std::string, std::string> read_kv_file(const std::filesystem::path& path);
void apply_kv(RunConfig& cfg, const std::map<std::string, std::string>& kv);

/// Shared ingest pipeline: load, convert, select columns, align.
AlignedPanel load_panel(const RunConfig& cfg);

/// Moments, correlation matrix, and ACF tables for returns and squares.
void run_describe(const RunConfig& cfg);

/// Pre-fit test battery on raw and MA-filtered returns, plus the
/// standardized-residual battery when a fitted model file is supplied.
void run_diagnose(const RunConfig& cfg);

/// Per-pair VAR-BEKK fits with parameter reports, correlation-path CSVs
/// and correlation summaries. Returns false when any pair fails to
/// converge (other pairs still complete).
bool run_fit(const RunConfig& cfg);

/// Simulate a dataset from a key-value DGP spec file into ingestible CSV
/// plus a true-parameter sidecar.
void run_simulate(const std::filesystem::path& spec_file, const RunConfig& cfg);

}  // namespace mgarch::cli
