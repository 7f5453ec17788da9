#pragma once

#include <Eigen/Dense>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mgarch {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;
using MatX2 = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Calendar date, ISO-8601 (YYYY-MM-DD) only.
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;

    [[nodiscard]] bool valid() const;

    /// Days since 1970-01-01 (proleptic Gregorian).
    [[nodiscard]] long serial() const;

    /// 0 = Sunday ... 6 = Saturday.
    [[nodiscard]] int weekday() const;

    [[nodiscard]] std::string str() const;

    static std::optional<Date> parse(std::string_view text);
    static Date from_serial(long days);

    /// Next Mon-Fri date strictly after this one.
    [[nodiscard]] Date next_business_day() const;
};

/// Synthesize `n` consecutive business days starting at `origin`
/// (origin itself is shifted forward if it falls on a weekend).
std::vector<Date> business_days(Date origin, std::size_t n);

enum class Unit { Percent, Decimal };

std::string to_string(Unit u);

/// One asset's dated return sequence. Values carry an explicit unit tag;
/// everything downstream of ingest works in percent.
struct ReturnSeries {
    std::string name;
    std::vector<Date> dates;
    Eigen::VectorXd values;
    Unit unit = Unit::Percent;

    [[nodiscard]] Eigen::Index size() const { return values.size(); }

    /// Throws if dates are not strictly increasing, lengths mismatch,
    /// any value is non-finite, or the series is shorter than 2.
    void validate() const;
};

/// Convert between percent and decimal units (no-op when units match).
ReturnSeries convert_scale(const ReturnSeries& s, Unit target);

/// Two or more return series on a byte-identical date vector.
struct AlignedPanel {
    std::vector<Date> dates;
    std::vector<std::string> names;
    Eigen::MatrixXd values;  // T x N, column per series

    [[nodiscard]] Eigen::Index T() const { return values.rows(); }
    [[nodiscard]] Eigen::Index width() const { return values.cols(); }

    [[nodiscard]] ReturnSeries series(Eigen::Index i) const;

    /// Extract columns (i, j) as a T x 2 block (estimation works on pairs).
    [[nodiscard]] MatX2 pair(Eigen::Index i, Eigen::Index j) const;

    void validate() const;
};

/// Mean-equation residuals for one bivariate system.
struct ResidualPanel {
    std::vector<Date> dates;
    MatX2 eps;

    [[nodiscard]] Eigen::Index T() const { return eps.rows(); }
};

}  // namespace mgarch
