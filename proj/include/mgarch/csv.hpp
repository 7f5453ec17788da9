#pragma once

#include "mgarch/types.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mgarch {

enum class ColumnKind { Price, Return };
enum class ReturnMethod { Log, Simple };
enum class AlignPolicy { Intersect, Strict };

/// Ingest settings. Rows with unparseable cells are rejected unless
/// `skip_bad_rows` is set, in which case they are dropped and counted.
struct IngestConfig {
    bool skip_bad_rows = false;
    ColumnKind default_kind = ColumnKind::Price;
    /// Per-column overrides of the default kind, keyed by header name.
    std::map<std::string, ColumnKind> kind_overrides;
};

/// Parsed CSV contents: a date column plus named numeric columns.
struct RawTable {
    std::vector<Date> dates;
    std::vector<std::string> names;
    std::vector<Eigen::VectorXd> columns;
    std::vector<ColumnKind> kinds;
    std::size_t skipped_rows = 0;

    [[nodiscard]] std::size_t T() const { return dates.size(); }
};

/// Load a UTF-8, comma-delimited CSV whose header starts with a `date`
/// column (ISO-8601). Throws on missing file, malformed header,
/// non-monotone dates, or (unless skipping is enabled) non-numeric cells.
RawTable load_csv(const std::filesystem::path& path, const IngestConfig& config = {});

/// Convert a RawTable into return series. Price columns lose their first
/// observation; return columns pass through with unit conversion only.
/// `scale` declares the unit of input return columns and of the output:
/// log/percent gives r_t = 100*ln(P_t / P_{t-1}).
std::vector<ReturnSeries> to_returns(const RawTable& table, ReturnMethod method,
                                     Unit scale = Unit::Percent);

/// Align series on their dates. `Intersect` keeps common dates only,
/// `Strict` throws on any mismatch. Series are converted to percent.
AlignedPanel align(const std::vector<ReturnSeries>& series,
                   AlignPolicy policy = AlignPolicy::Intersect);

/// Write an AlignedPanel in the same CSV format load_csv consumes
/// (date column first, then one numeric column per series).
void write_panel_csv(const std::filesystem::path& path, const AlignedPanel& panel);

}  // namespace mgarch
